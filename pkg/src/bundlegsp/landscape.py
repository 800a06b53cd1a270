"""Energy landscapes on the pentane conformation bundle.

Grid coordinates are already quotient coordinates: base position
``b in 0..14`` and fiber position ``i in 0..5`` of the 15-cycle / 6-path
Moebius bundle.  With ``s = 2 pi b / 15`` and ``d = 2 pi (i + 1/2) / 6`` the
torsions are ``theta1 = (s + d) / 2`` and ``theta2 = (s - d) / 2``.  Going once
around the base sends ``(s, d)`` to ``(s + 2 pi, 2 pi - d)``, which swaps the
torsions, and the fiber index ``i`` to ``5 - i``, which matches the reversal
voltage on base edge ``(14, 0)``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .bundle import GraphBundle
from .graphs import Signal

BASE_LENGTH = 15
FIBER_LENGTH = 6

# OPLS-AA CT-CT-CT-CT torsion, kcal/mol
OPLS_ALKANE = (1.740, -0.157, 0.279)
# UFF sp3 carbon van der Waals well depth (kcal/mol) and distance (angstrom)
UFF_C_DEPTH = 0.105
UFF_C_DISTANCE = 3.851
CC_BOND = 1.53
CCC_ANGLE = np.deg2rad(112.0)


@dataclass(frozen=True, eq=False)
class LandscapeGrid:
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 2:
            raise ValueError(f"landscape must be a 2-d grid, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("landscape values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def base_length(self) -> int:
        return self.values.shape[0]

    @property
    def fiber_length(self) -> int:
        return self.values.shape[1]

    def to_signal(self, bundle: GraphBundle) -> Signal:
        if (bundle.base.n, bundle.fiber.n) != self.values.shape:
            raise ValueError(
                f"landscape grid {self.values.shape} does not match bundle "
                f"({bundle.base.n}, {bundle.fiber.n})"
            )
        b, f = bundle.indexing.pair(np.arange(bundle.n))
        return Signal(bundle.total, self.values[b, f])


def read_landscape_csv(path) -> LandscapeGrid:
    """Read ``base_idx,fiber_idx,energy`` rows into a full grid."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.DictReader(_skip_comments(fh))]
    if not rows:
        raise ValueError(f"{path}: empty landscape file")
    missing = {"base_idx", "fiber_idx", "energy"} - set(rows[0])
    if missing:
        raise ValueError(f"{path}: missing columns {sorted(missing)}")
    b = np.array([int(r["base_idx"]) for r in rows])
    f = np.array([int(r["fiber_idx"]) for r in rows])
    e = np.array([float(r["energy"]) for r in rows])
    if b.min() < 0 or f.min() < 0:
        raise ValueError(f"{path}: negative grid index")
    grid = np.full((b.max() + 1, f.max() + 1), np.nan)
    grid[b, f] = e
    if len(rows) != grid.size or np.isnan(grid).any():
        raise ValueError(f"{path}: grid is incomplete or has duplicate cells")
    return LandscapeGrid(grid)


def write_landscape_csv(grid: LandscapeGrid, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["base_idx", "fiber_idx", "energy"])
        for b in range(grid.base_length):
            for f in range(grid.fiber_length):
                w.writerow([b, f, repr(float(grid.values[b, f]))])


def _skip_comments(lines):
    for line in lines:
        if not line.startswith("#"):
            yield line


def quotient_torsions(base_length: int = BASE_LENGTH, fiber_length: int = FIBER_LENGTH):
    """Torsion pairs ``(theta1, theta2)`` at every grid cell, shape ``(B, F)``."""
    s = 2 * np.pi * np.arange(base_length)[:, None] / base_length
    d = 2 * np.pi * (np.arange(fiber_length)[None, :] + 0.5) / fiber_length
    return (s + d) / 2, (s - d) / 2


def opls_torsion(theta, v=OPLS_ALKANE):
    """Three-term cosine series with the trans minimum at ``theta = pi``."""
    return (0.5 * v[0] * (1 + np.cos(theta))
            + 0.5 * v[1] * (1 - np.cos(2 * theta))
            + 0.5 * v[2] * (1 + np.cos(3 * theta)))


def _place(a, b, c, bond, angle, torsion):
    """Next atom after ``a, b, c`` at the given internal coordinates (NeRF)."""
    bc = c - b
    bc /= np.linalg.norm(bc, axis=-1, keepdims=True)
    n = np.cross(b - a, bc)
    n /= np.linalg.norm(n, axis=-1, keepdims=True)
    m = np.cross(n, bc)
    d = np.stack([-bond * np.cos(angle) * np.ones_like(torsion),
                  bond * np.sin(angle) * np.cos(torsion),
                  bond * np.sin(angle) * np.sin(torsion)], axis=-1)
    return c + d[..., :1] * bc + d[..., 1:2] * m + d[..., 2:] * n


def terminal_distance(theta1, theta2, bond: float = CC_BOND, angle: float = CCC_ANGLE):
    """C1-C5 distance of a rigid five-carbon chain with the two inner torsions."""
    theta1, theta2 = np.broadcast_arrays(np.asarray(theta1, float), np.asarray(theta2, float))
    shape = theta1.shape + (3,)
    c1 = np.zeros(shape)
    c2 = np.broadcast_to([bond, 0.0, 0.0], shape).copy()
    c3 = np.broadcast_to([bond - bond * np.cos(angle), bond * np.sin(angle), 0.0], shape).copy()
    c4 = _place(c1, c2, c3, bond, angle, theta1)
    c5 = _place(c2, c3, c4, bond, angle, theta2)
    return np.linalg.norm(c5 - c1, axis=-1)


def rigid_pentane_energy(theta1, theta2):
    """Rigid-rotor stand-in for the n-pentane conformational energy.

    Two alkane torsion terms plus a Lennard-Jones contact between the
    terminal carbons, with standard bond length and angle.  Symmetric under
    swapping the torsions, with a steep steric wall around the syn-pentane
    region.  Not a substitute for a real force-field calculation.
    """
    q = UFF_C_DISTANCE / terminal_distance(theta1, theta2)
    lj = UFF_C_DEPTH * (q**12 - 2 * q**6)
    return opls_torsion(theta1) + opls_torsion(theta2) + lj


def rigid_pentane_landscape(base_length: int = BASE_LENGTH, fiber_length: int = FIBER_LENGTH) -> LandscapeGrid:
    return LandscapeGrid(rigid_pentane_energy(*quotient_torsions(base_length, fiber_length)))


def fixture_path() -> Path:
    return Path(str(resources.files("bundlegsp") / "data" / "pentane_fixture.csv"))


def load_fixture() -> LandscapeGrid:
    return read_landscape_csv(fixture_path())
