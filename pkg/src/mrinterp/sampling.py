"""Parameter regions, sample-point families and nodal polynomials.

Two region shapes are supported: closed disks and (possibly tilted) complex
segments.  For each one the logarithmic capacity and the exterior Green
potential have closed forms, and the asymptotically optimal interpolation
nodes are explicit (scaled roots of unity on a disk boundary, first-kind
Chebyshev points on a segment).  A low-discrepancy alternative based on the
Halton sequence is provided for comparison runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatchError

# Nodes closer than this (relative to the node scale) count as duplicates.
TAU_NODE = 1e-14


class Provenance(Enum):
    FEJER_DISK = "fejer-disk"
    FEJER_SEGMENT = "fejer-segment"
    QUASI_RANDOM = "quasi-random"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Disk:
    """Closed disk ``|mu - center| <= radius``."""

    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")


@dataclass(frozen=True)
class Segment:
    """Straight segment from ``a`` to ``b`` in the complex plane."""

    a: complex
    b: complex

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("segment endpoints must differ")


def region_center(region) -> complex:
    """Geometric center: disk center, or segment midpoint."""
    if isinstance(region, Disk):
        return complex(region.center)
    if isinstance(region, Segment):
        return (complex(region.a) + complex(region.b)) / 2.0
    raise TypeError(f"unsupported region type {type(region).__name__}")


def capacity(region) -> float:
    """Logarithmic capacity of the region.

    A disk of radius r has capacity r; a segment of length L has capacity
    L/4 (so [0, 4] has capacity exactly 1).
    """
    if isinstance(region, Disk):
        return float(region.radius)
    if isinstance(region, Segment):
        return abs(complex(region.b) - complex(region.a)) / 4.0
    raise TypeError(f"unsupported region type {type(region).__name__}")


def green_potential(region, mu):
    """Green potential of the region, evaluated at ``mu`` (scalar or array).

    Equals the capacity everywhere on the region and grows like |mu - center|
    far away.  For a disk this is max(|mu - c|, r).  For a segment, with
    z the affine image of mu taking the segment to [-1, 1], the value is
    capacity * |z + sqrt(z^2 - 1)| on the branch with modulus >= 1; since the
    two square-root branches give reciprocal moduli, taking max(t, 1/t) of the
    principal branch selects it and is continuous across the segment.
    """
    mu_arr = np.asarray(mu, dtype=complex)
    cap = capacity(region)
    if isinstance(region, Disk):
        out = np.maximum(np.abs(mu_arr - region.center), region.radius)
    else:
        a, b = complex(region.a), complex(region.b)
        z = (2.0 * mu_arr - a - b) / (b - a)
        t = np.abs(z + np.sqrt(z * z - 1.0))
        # On the segment itself t == 1 and both branches agree with the capacity.
        t = np.where(t == 0.0, 1.0, t)
        out = cap * np.maximum(t, 1.0 / t)
    if np.isscalar(mu) or getattr(mu, "ndim", 0) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class SampleSet:
    """A finite set of pairwise distinct sample points.

    Members
    -------
    nodes : (S,) complex ndarray
        The sample points, in construction order.
    omega_prime : (S,) complex ndarray
        Derivative of the nodal polynomial at each node,
        omega'(mu_j) = prod_{k != j} (mu_j - mu_k).  Empty product (S = 1)
        gives 1.
    provenance : Provenance
        How the nodes were generated.
    """

    nodes: np.ndarray
    omega_prime: np.ndarray = field(default=None)
    provenance: Provenance = Provenance.CUSTOM

    def __post_init__(self):
        nodes = np.atleast_1d(np.asarray(self.nodes, dtype=complex))
        if nodes.ndim != 1 or nodes.size == 0:
            raise DimensionMismatchError("nodes must be a nonempty 1-d array")
        scale = max(1.0, float(np.max(np.abs(nodes))))
        if nodes.size > 1:
            diff = np.abs(nodes[:, None] - nodes[None, :])
            np.fill_diagonal(diff, np.inf)
            if diff.min() <= TAU_NODE * scale:
                raise ValueError("sample nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        if self.omega_prime is None:
            object.__setattr__(self, "omega_prime", _omega_prime(nodes))
        else:
            op = np.asarray(self.omega_prime, dtype=complex)
            if op.shape != nodes.shape:
                raise DimensionMismatchError("omega_prime shape must match nodes")
            object.__setattr__(self, "omega_prime", op)

    def __len__(self):
        return self.nodes.size


def _omega_prime(nodes: np.ndarray) -> np.ndarray:
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    return np.prod(diff, axis=1)


def custom_nodes(nodes) -> SampleSet:
    """Wrap an arbitrary set of distinct points as a SampleSet."""
    return SampleSet(np.asarray(nodes, dtype=complex), provenance=Provenance.CUSTOM)


def fejer_nodes(region, count: int) -> SampleSet:
    """Asymptotically optimal nodes for the region.

    Disk: count-th roots of unity scaled to the boundary circle,
    c + r*exp(2*pi*1j*j/count) for j = 1..count.  Segment: first-kind
    Chebyshev points mapped affinely onto the segment.
    """
    if count < 1:
        raise ValueError("node count must be >= 1")
    if isinstance(region, Disk):
        j = np.arange(1, count + 1)
        nodes = region.center + region.radius * np.exp(2j * np.pi * j / count)
        return SampleSet(nodes, provenance=Provenance.FEJER_DISK)
    if isinstance(region, Segment):
        a, b = complex(region.a), complex(region.b)
        k = np.arange(1, count + 1)
        z = np.cos((2 * k - 1) * np.pi / (2 * count))
        nodes = (a + b) / 2.0 + (b - a) / 2.0 * z
        return SampleSet(nodes, provenance=Provenance.FEJER_SEGMENT)
    raise TypeError(f"unsupported region type {type(region).__name__}")


def _radical_inverse(index: int, base: int) -> float:
    # van der Corput radical inverse of a positive integer.
    inv, scale = 0.0, 1.0
    while index > 0:
        scale /= base
        inv += scale * (index % base)
        index //= base
    return inv


def quasi_random_nodes(region, count: int, skip: int = 0) -> SampleSet:
    """Halton points (bases 2 and 3) mapped into the region.

    Disk: the pair (x1, x2) (bases 2 and 3, starting at sequence index 1)
    maps to center + radius*sqrt(x1)*exp(2j*pi*x2), which is area-uniform.
    Segment: x1 alone maps affinely onto the segment.  The first ``skip``
    sequence indices are discarded; points that would duplicate an existing
    node are skipped and the sequence extended.
    """
    if count < 1:
        raise ValueError("node count must be >= 1")
    nodes = []
    index = skip
    scale_hint = max(1.0, abs(region_center(region)) + capacity(region) * 4)
    while len(nodes) < count:
        index += 1
        x1 = _radical_inverse(index, 2)
        if isinstance(region, Disk):
            x2 = _radical_inverse(index, 3)
            point = region.center + region.radius * np.sqrt(x1) * np.exp(2j * np.pi * x2)
        elif isinstance(region, Segment):
            point = complex(region.a) + (complex(region.b) - complex(region.a)) * x1
        else:
            raise TypeError(f"unsupported region type {type(region).__name__}")
        if any(abs(point - q) <= TAU_NODE * scale_hint for q in nodes):
            continue
        nodes.append(point)
    return SampleSet(np.array(nodes, dtype=complex), provenance=Provenance.QUASI_RANDOM)


def nodal_poly_eval(samples: SampleSet, mu):
    """Evaluate the nodal polynomial omega(mu) = prod_j (mu - mu_j)."""
    mu_arr = np.asarray(mu, dtype=complex)
    flat = np.atleast_1d(mu_arr)
    vals = np.prod(flat[:, None] - samples.nodes[None, :], axis=1)
    if mu_arr.ndim == 0:
        return complex(vals[0])
    return vals.reshape(mu_arr.shape)
