"""Finite conformal symmetry groups of the sphere and the disk.

Every group is realized as a finite subgroup of O(3).  Disk groups act on
the closed unit disk sitting in the xy-plane; their elements are planar
2x2 orthogonal matrices embedded as 3x3 blocks fixing the z-axis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import AmbiguousDedup

GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0
GENERIC_SEED = 0x5EED
DEFAULT_TOL = 1e-8


class Family(str, enum.Enum):
    CYCLIC_SPHERE = "CyclicSphere"
    DIHEDRAL_SPHERE = "DihedralSphere"
    T = "T"
    TD = "Td"
    TH = "Th"
    O = "O"
    OH = "Oh"
    I = "I"
    IH = "Ih"
    CYCLIC_DISK = "CyclicDisk"
    DIHEDRAL_DISK = "DihedralDisk"


_PARAMETRIC = {Family.CYCLIC_SPHERE, Family.DIHEDRAL_SPHERE, Family.CYCLIC_DISK, Family.DIHEDRAL_DISK}
_DISK = {Family.CYCLIC_DISK, Family.DIHEDRAL_DISK}

_FIXED_ORDER = {
    Family.T: 12, Family.TD: 24, Family.TH: 24, Family.O: 24,
    Family.OH: 48, Family.I: 60, Family.IH: 120,
}


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family in _PARAMETRIC:
            if self.n is None or int(self.n) < 1:
                raise ValueError(f"{self.family.value} needs n >= 1, got {self.n!r}")
            object.__setattr__(self, "n", int(self.n))
        elif self.n is not None:
            raise ValueError(f"{self.family.value} takes no parameter n")

    @property
    def is_disk(self) -> bool:
        return self.family in _DISK

    @property
    def expected_order(self) -> int:
        if self.family in (Family.CYCLIC_SPHERE, Family.CYCLIC_DISK):
            return self.n
        if self.family in (Family.DIHEDRAL_SPHERE, Family.DIHEDRAL_DISK):
            return 2 * self.n
        return _FIXED_ORDER[self.family]

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``"O"``, ``"Ih"``, ``"CyclicSphere(5)"`` or ``"DihedralDisk:3"``."""
        text = text.strip()
        for sep in ("(", ":"):
            if sep in text:
                name, arg = text.split(sep, 1)
                return cls(Family(name.strip()), int(arg.strip().rstrip(")")))
        return cls(Family(text))

    def __str__(self) -> str:
        if self.n is None:
            return self.family.value
        return f"{self.family.value}({self.n})"


@dataclass(frozen=True)
class GroupElement:
    matrix: np.ndarray
    det: int

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if np.max(np.abs(m.T @ m - np.eye(3))) > 1e-12:
            raise ValueError("group element is not orthogonal")
        d = np.linalg.det(m)
        if abs(abs(d) - 1.0) > 1e-12 or int(round(d)) != self.det:
            raise ValueError(f"inconsistent determinant flag {self.det} for det {d}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class SymmetryGroup:
    spec: GroupSpec
    matrices: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.matrices)

    @property
    def elements(self) -> list[GroupElement]:
        return [GroupElement(m, int(round(np.linalg.det(m)))) for m in self.matrices]

    @property
    def rotation_subgroup(self) -> np.ndarray:
        """Matrices of the orientation-preserving part."""
        dets = np.linalg.det(self.matrices)
        return self.matrices[dets > 0]

    def index_of(self, m: np.ndarray, tol: float = 1e-10) -> int:
        err = np.max(np.abs(self.matrices - m[None]), axis=(1, 2))
        i = int(np.argmin(err))
        return i if err[i] <= tol else -1

    def is_closed(self, tol: float = 1e-10) -> bool:
        for a in self.matrices:
            prods = np.einsum("ij,njk->nik", a, self.matrices)
            for p in prods:
                if self.index_of(p, tol) < 0:
                    return False
            if self.index_of(a.T, tol) < 0:
                return False
        return True


@dataclass(frozen=True)
class Orbit:
    seed: np.ndarray
    points: np.ndarray
    cardinality: int


def rotation(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation about ``axis`` by ``angle``."""
    k = np.asarray(axis, dtype=float)
    k = k / np.linalg.norm(k)
    kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + np.sin(angle) * kx + (1 - np.cos(angle)) * (kx @ kx)


def rotation_taking(a, b) -> np.ndarray:
    """A rotation matrix R with R @ a = b for unit vectors a, b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = float(np.dot(a, b))
    axis = np.cross(a, b)
    s = np.linalg.norm(axis)
    if s < 1e-14:
        if c > 0:
            return np.eye(3)
        perp = np.cross(a, [1.0, 0.0, 0.0])
        if np.linalg.norm(perp) < 1e-8:
            perp = np.cross(a, [0.0, 1.0, 0.0])
        return rotation(perp, np.pi)
    return rotation(axis, np.arctan2(s, c))


def _close(generators, max_order: int = 240) -> np.ndarray:
    elems = [np.eye(3)]
    keys = {tuple(np.round(np.eye(3), 8).ravel())}
    frontier = [np.eye(3)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                p = g @ a
                key = tuple(np.round(p, 8).ravel() + 0.0)
                if key not in keys:
                    keys.add(key)
                    elems.append(p)
                    nxt.append(p)
        if len(elems) > max_order:
            raise RuntimeError("generators do not close into a finite group of the expected size")
        frontier = nxt
    return np.array(elems)


# Tetrahedron inscribed in the cube: vertices (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1).
_CYCLE = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
_HALF_X = np.diag([1.0, -1.0, -1.0])
_QUARTER_Z = rotation([0, 0, 1], np.pi / 2)
# Icosahedron: cyclic permutations of (0, +-1, +-phi).
_FIFTH_VERTEX = rotation([0.0, 1.0, GOLDEN], 2 * np.pi / 5)


def _rotation_group(family: Family, n: int | None) -> np.ndarray:
    if family in (Family.CYCLIC_SPHERE, Family.CYCLIC_DISK):
        return _close([rotation([0, 0, 1], 2 * np.pi / n)])
    if family == Family.DIHEDRAL_SPHERE:
        return _close([rotation([0, 0, 1], 2 * np.pi / n), _HALF_X])
    if family in (Family.T, Family.TD, Family.TH):
        return _close([_CYCLE, _HALF_X])
    if family in (Family.O, Family.OH):
        return _close([_CYCLE, _HALF_X, _QUARTER_Z])
    if family in (Family.I, Family.IH):
        return _close([_CYCLE, _HALF_X, _FIFTH_VERTEX])
    raise ValueError(family)


def _snap(mats: np.ndarray) -> np.ndarray:
    """Re-orthogonalize accumulated products via the polar factor."""
    u, _, vt = np.linalg.svd(mats)
    return u @ vt


@lru_cache(maxsize=None)
def build_group(spec: GroupSpec) -> SymmetryGroup:
    f = spec.family
    if f == Family.DIHEDRAL_DISK:
        mirror = np.diag([1.0, -1.0, 1.0])
        mats = _close([rotation([0, 0, 1], 2 * np.pi / spec.n), mirror])
    elif f == Family.TD:
        rot_t = _rotation_group(Family.T, None)
        rot_o = _close([_CYCLE, _HALF_X, _QUARTER_Z])
        tset = {tuple(np.round(m, 8).ravel() + 0.0) for m in rot_t}
        odd = [m for m in rot_o if tuple(np.round(m, 8).ravel() + 0.0) not in tset]
        mats = np.concatenate([rot_t, -np.array(odd)])
    elif f in (Family.TH, Family.OH, Family.IH):
        rot = _rotation_group(f, None)
        mats = np.concatenate([rot, -rot])
    else:
        mats = _rotation_group(f, spec.n)
    mats = _snap(mats)
    mats.setflags(write=False)
    group = SymmetryGroup(spec, mats)
    if group.order != spec.expected_order:
        raise RuntimeError(f"{spec}: built {group.order} elements, expected {spec.expected_order}")
    return group


def conjugate(group: SymmetryGroup, r: np.ndarray) -> SymmetryGroup:
    """The group R G R^T (same spec, rotated realization)."""
    mats = np.einsum("ij,njk,lk->nil", r, group.matrices, r)
    return SymmetryGroup(group.spec, mats)


def _dedupe(images: np.ndarray, tol: float) -> np.ndarray:
    kept: list[np.ndarray] = []
    for x in images:
        if kept:
            dist = np.linalg.norm(np.array(kept) - x, axis=1)
            dmin = float(dist.min())
            if dmin <= tol / 10:
                continue
            if dmin < tol:
                raise AmbiguousDedup(f"orbit images at distance {dmin:.3e}, inside ({tol / 10:.1e}, {tol:.1e})")
        kept.append(x)
    return np.array(kept)


def stabilizer_order(group: SymmetryGroup, point, tol: float = DEFAULT_TOL) -> int:
    p = np.asarray(point, dtype=float)
    images = group.matrices @ p
    return int(np.sum(np.linalg.norm(images - p, axis=1) <= tol / 10))


def orbit(group: SymmetryGroup, point, tol: float = DEFAULT_TOL) -> Orbit:
    p = np.asarray(point, dtype=float)
    if abs(np.linalg.norm(p) - 1.0) > 1e-12:
        raise ValueError("orbit seed must be a unit vector")
    if tol <= 0:
        raise ValueError("tol must be positive")
    points = _dedupe(group.matrices @ p, tol)
    stab = stabilizer_order(group, p, tol)
    if stab * len(points) != group.order:
        raise AmbiguousDedup(
            f"orbit of size {len(points)} with stabilizer {stab} does not match group order {group.order}"
        )
    return Orbit(p, points, len(points))


def _special_points(group: SymmetryGroup, rng: np.random.Generator) -> list[np.ndarray]:
    """Rotation poles, one random point per mirror, and one generic point."""
    pts: list[np.ndarray] = []
    disk = group.spec.is_disk
    for m in group.matrices:
        if np.allclose(m, np.eye(3), atol=1e-12):
            continue
        det = np.linalg.det(m)
        if det > 0:
            if disk:
                continue  # rotation axes of disk groups are the z-axis, off the boundary circle
            w, v = np.linalg.eig(m)
            axis = np.real(v[:, np.argmin(np.abs(w - 1.0))])
            axis /= np.linalg.norm(axis)
            pts.extend([axis, -axis])
        elif abs(np.trace(m) - 1.0) < 1e-9:
            w, v = np.linalg.eig(m)
            normal = np.real(v[:, np.argmin(np.abs(w + 1.0))])
            normal /= np.linalg.norm(normal)
            if disk:
                d = np.cross(normal, [0.0, 0.0, 1.0])
                d /= np.linalg.norm(d)
                pts.extend([d, -d])
            else:
                u = rng.standard_normal(3)
                u -= np.dot(u, normal) * normal
                pts.append(u / np.linalg.norm(u))
    if disk:
        a = rng.uniform(0, 2 * np.pi)
        pts.append(np.array([np.cos(a), np.sin(a), 0.0]))
    else:
        u = rng.standard_normal(3)
        pts.append(u / np.linalg.norm(u))
    return pts


def orbit_size_generators(group: SymmetryGroup, tol: float = DEFAULT_TOL) -> frozenset[int]:
    """All distinct orbit cardinalities (on the boundary circle for disk groups)."""
    rng = np.random.default_rng(GENERIC_SEED)
    sizes = set()
    for p in _special_points(group, rng):
        sizes.add(group.order // stabilizer_order(group, p, tol))
    return frozenset(sizes)
