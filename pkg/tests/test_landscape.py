import numpy as np
import pytest

from bundlegsp.landscape import (
    LandscapeGrid,
    load_fixture,
    opls_torsion,
    quotient_torsions,
    read_landscape_csv,
    rigid_pentane_energy,
    rigid_pentane_landscape,
    terminal_distance,
    write_landscape_csv,
)


def nerf_chain(t1, t2, bond=1.53, ang=np.deg2rad(112.0)):
    """Scalar rebuild of the five-carbon chain, one conformation at a time."""
    p = [np.zeros(3), np.array([bond, 0, 0.0]), np.array([bond - bond * np.cos(ang), bond * np.sin(ang), 0.0])]
    for tor in (t1, t2):
        a, b, c = p[-3], p[-2], p[-1]
        bc = (c - b) / np.linalg.norm(c - b)
        n = np.cross(b - a, bc)
        n /= np.linalg.norm(n)
        m = np.cross(n, bc)
        p.append(c - bond * np.cos(ang) * bc + bond * np.sin(ang) * (np.cos(tor) * m + np.sin(tor) * n))
    return p


def test_bond_geometry():
    p = nerf_chain(0.3, 2.0)
    for i in range(4):
        assert np.linalg.norm(p[i + 1] - p[i]) == pytest.approx(1.53)
    for i in range(3):
        u, v = p[i] - p[i + 1], p[i + 2] - p[i + 1]
        assert np.degrees(np.arccos(u @ v / np.linalg.norm(u) / np.linalg.norm(v))) == pytest.approx(112.0)


def test_terminal_distance_matches_scalar_rebuild():
    rng = np.random.default_rng(0)
    t = rng.uniform(-np.pi, np.pi, (20, 2))
    got = terminal_distance(t[:, 0], t[:, 1])
    for (a, b), r in zip(t, got):
        p = nerf_chain(a, b)
        assert r == pytest.approx(np.linalg.norm(p[4] - p[0]), abs=1e-12)


def test_all_trans_is_longest():
    r_tt = terminal_distance(np.pi, np.pi)
    t1, t2 = np.meshgrid(np.linspace(-np.pi, np.pi, 37), np.linspace(-np.pi, np.pi, 37))
    assert r_tt >= terminal_distance(t1, t2).max() - 1e-12


def test_trans_minimum_of_torsion():
    t = np.linspace(-np.pi, np.pi, 721)
    assert abs(abs(t[np.argmin(opls_torsion(t))]) - np.pi) < 1e-9


def test_twist_consistency():
    # continuing past base position 14 must reproduce row 0 with the fiber reversed
    d = 2 * np.pi * (np.arange(6) + 0.5) / 6
    cont = rigid_pentane_energy((2 * np.pi + d) / 2, (2 * np.pi - d) / 2)
    assert np.allclose(cont, rigid_pentane_landscape().values[0, ::-1], rtol=1e-12)


def test_energy_symmetric_under_swap():
    rng = np.random.default_rng(4)
    a, b = rng.uniform(-np.pi, np.pi, (2, 50))
    assert np.allclose(rigid_pentane_energy(a, b), rigid_pentane_energy(b, a), rtol=1e-12)


def test_fixture_matches_generator():
    grid = load_fixture()
    assert grid.values.shape == (15, 6)
    assert np.allclose(grid.values, rigid_pentane_landscape().values, rtol=1e-12)


def test_grid_to_signal_bijection(pentane):
    grid = load_fixture()
    x = grid.to_signal(pentane)
    assert x.values.shape == (90,)
    b, f = pentane.indexing.pair(np.arange(90))
    assert len(set(zip(b.tolist(), f.tolist()))) == 90
    assert np.array_equal(x.values, grid.values[b, f])


def test_dimension_mismatch(mobius):
    with pytest.raises(ValueError):
        load_fixture().to_signal(mobius)


def test_csv_roundtrip(tmp_path):
    grid = LandscapeGrid(np.random.default_rng(1).standard_normal((15, 6)))
    path = tmp_path / "l.csv"
    write_landscape_csv(grid, path)
    assert np.array_equal(read_landscape_csv(path).values, grid.values)
    assert path.read_text().splitlines()[0] == "base_idx,fiber_idx,energy"
    assert len(path.read_text().splitlines()) == 91


def test_csv_incomplete(tmp_path):
    path = tmp_path / "l.csv"
    path.write_text("base_idx,fiber_idx,energy\n0,0,1.0\n1,1,2.0\n")
    with pytest.raises(ValueError):
        read_landscape_csv(path)


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        LandscapeGrid(np.array([[1.0, np.inf]]))
