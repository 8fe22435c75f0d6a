"""Conversion between a general membership instance and its spherical form.

The spherical form translates the query to the origin and scales every point
onto the unit sphere. Exact membership, approximate solutions and separating
hyperplanes all transfer back to the original coordinates.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_query
from .exceptions import CertificateError
from .geometry import Hyperplane, Iterate, PointSet

COINCIDENT_EPS = 1e-14


@dataclass(frozen=True)
class SphericalInstance:
    unit_points: PointSet
    scales: np.ndarray
    radius: float
    query_origin: np.ndarray
    raw: PointSet

    @property
    def scaled_points(self):
        """The points (v_i - p) / R, all inside the unit ball."""
        return self.unit_points.points * (self.scales / self.radius)[:, None]


@dataclass(frozen=True)
class ImmediateMember:
    """The query coincides with data point `index`, so it is a hull member."""

    index: int
    raw: PointSet

    def iterate(self):
        return Iterate.at_vertex(self.raw, self.index)


def to_spherical(raw, p_raw):
    """Translate `p_raw` to the origin and project every point onto the sphere.

    Returns an :class:`ImmediateMember` when the query coincides with a data
    point (distance at most ``1e-14 * (1 + |p|)``).
    """
    if not isinstance(raw, PointSet):
        raw = PointSet(raw)
    p_raw = check_query(p_raw, raw.m)
    shifted = raw.points - p_raw
    scales = np.linalg.norm(shifted, axis=1)
    hit = int(np.argmin(scales))
    if scales[hit] <= COINCIDENT_EPS * (1.0 + np.linalg.norm(p_raw)):
        return ImmediateMember(hit, raw)
    unit = PointSet._trusted(shifted / scales[:, None])
    scales.setflags(write=False)
    p_raw.setflags(write=False)
    return SphericalInstance(unit, scales, float(scales.max()), p_raw, raw)


def recover_weights(alpha, scales):
    """Map simplex weights over unit points to weights over the raw points."""
    alpha = np.asarray(alpha, dtype=np.float64)
    beta = alpha / scales
    total = beta.sum()
    if not total > 0:
        raise ValueError("all weights are zero")
    return beta / total


def recover_solution(alpha, inst):
    """Raw-frame iterate whose distance to the query is at most eps * R.

    If ``|sum alpha_i u_i| <= eps`` then the returned point is within
    ``eps * inst.radius`` of the original query.
    """
    beta = recover_weights(alpha, inst.scales)
    return Iterate.from_weights(inst.raw, beta)


def recover_witness(p_prime, inst, frame="raw"):
    """Separating hyperplane for the raw instance from a unit-sphere witness.

    Every raw point evaluates strictly positive on the returned plane and the
    query strictly negative. With ``frame="scaled"`` the plane is returned in
    the frame of the points ``(v_i - p) / R`` instead.
    """
    p_prime = np.asarray(p_prime, dtype=np.float64)
    sq = float(p_prime @ p_prime)
    if not sq > 0:
        raise CertificateError("witness is the origin")
    t = (inst.scales / inst.radius) * (inst.unit_points.points @ p_prime) / sq
    if np.any(t <= 0):
        raise CertificateError("input is not a witness: a projection falls on the wrong side")
    t_min = float(t.min())
    if frame == "scaled":
        return Hyperplane(p_prime, 0.5 * t_min * sq)
    if frame != "raw":
        raise ValueError(f"unknown frame {frame!r}")
    offset = float(p_prime @ inst.query_origin) + 0.5 * t_min * sq * inst.radius
    return Hyperplane(p_prime, offset)
