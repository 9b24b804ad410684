import numpy as np
import pytest

from dockslice import NoContact, fit_interface_plane, parse_structure, select_pair
from dockslice.plane import InterfacePlane, contact_midpoints, plane_residual

from conftest import fixture_text


def atom_line(serial, name, res, chain, seq, pos):
    name_field = f" {name:<3}"
    return (
        f"ATOM  {serial:>5} {name_field} {res:>3} {chain}{seq:>4}    "
        f"{pos[0]:8.3f}{pos[1]:8.3f}{pos[2]:8.3f}  1.00  0.00           {name[0]}"
    )


def pair_from_points(rec_points, lig_points):
    lines = []
    serial = 1
    for i, p in enumerate(rec_points):
        lines.append(atom_line(serial, "CA", "GLY", "A", i + 1, p))
        serial += 1
    for i, p in enumerate(lig_points):
        lines.append(atom_line(serial, "CA", "GLY", "B", i + 1, p))
        serial += 1
    return select_pair(parse_structure("\n".join(lines)), ["A"], ["B"])


def test_planar_contacts_give_exact_plane():
    # Mirror pairs straddling z=0: all contact midpoints lie exactly in z=0.
    rng = np.random.default_rng(5)
    xy = rng.uniform(-8, 8, size=(12, 2))
    rec = [(x, y, -1.0) for x, y in xy]
    lig = [(x, y, +1.0) for x, y in xy]
    pair = pair_from_points(rec, lig)
    plane = fit_interface_plane(pair)
    assert abs(plane.origin[2]) < 1e-9
    assert abs(abs(plane.normal[2]) - 1.0) < 1e-9
    # Oriented from receptor (z<0) toward ligand (z>0).
    assert plane.normal[2] > 0


def test_no_contact_when_far_apart():
    rec = [(0, 0, 0), (1, 0, 0)]
    lig = [(50, 0, 0), (51, 0, 0)]
    pair = pair_from_points(rec, lig)
    with pytest.raises(NoContact):
        fit_interface_plane(pair)


def test_axes_orthonormal_on_fixture(config):
    entry = config.entry("2ptc")
    pair = select_pair(
        parse_structure(fixture_text("2ptc")), entry.receptor_chains, entry.ligand_chains
    )
    plane = fit_interface_plane(pair)
    assert np.linalg.norm(plane.normal) == pytest.approx(1.0, abs=1e-9)
    assert plane.u @ plane.v == pytest.approx(0.0, abs=1e-9)
    assert plane.u @ plane.normal == pytest.approx(0.0, abs=1e-9)
    assert plane.v @ plane.normal == pytest.approx(0.0, abs=1e-9)
    # Right-handed frame.
    assert np.cross(plane.u, plane.v) @ plane.normal == pytest.approx(1.0, abs=1e-9)


def test_normal_is_smallest_covariance_eigenvector():
    rng = np.random.default_rng(11)
    rec = rng.normal(0, 3, size=(30, 3)) + [0, 0, -2.0]
    lig = rec + [0, 0, 4.0]  # pairs within 5 A, midplane around z=0
    pair = pair_from_points(rec, lig)
    plane = fit_interface_plane(pair)
    mids = contact_midpoints(pair)
    rel = mids - mids.mean(axis=0)
    cov = rel.T @ rel
    w, v = np.linalg.eigh(cov)
    expected = v[:, 0]
    assert min(
        np.linalg.norm(plane.normal - expected), np.linalg.norm(plane.normal + expected)
    ) < 1e-6
    # Residuals along the normal sum to ~0 about the origin.
    assert abs(float(plane.signed_distance(mids).sum())) < 1e-6


def test_random_cloud_beats_random_planes():
    """Fitted plane residual <= best of 1000 random planes through the centroid."""
    rng = np.random.default_rng(23)
    pts = rng.normal(0, 2.0, size=(20, 3)) * np.array([3.0, 2.0, 0.7])
    rec = pts + [0, 0, -1.5]
    lig = pts + [0, 0, +1.5]
    pair = pair_from_points(rec, lig)
    plane = fit_interface_plane(pair)
    mids = contact_midpoints(pair)
    fitted = plane_residual(plane, mids)

    center = mids.mean(axis=0)
    normals = rng.normal(size=(1000, 3))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    rel = mids - center
    residuals = ((rel @ normals.T) ** 2).sum(axis=0)
    assert fitted <= residuals.min() + 1e-9


def test_bridge_weighting_moves_plane():
    rng = np.random.default_rng(3)
    pts = rng.normal(0, 3.0, size=(25, 3))
    rec = pts + [0, 0, -1.0]
    lig = pts + [0, 0, +1.0]
    pair = pair_from_points(rec, lig)
    plain = fit_interface_plane(pair, bridges=None)

    from dockslice.charges import ChargeSite, SaltBridge

    pos_site = ChargeSite("A", 1, "LYS", "NZ", (0.0, 0.0, 9.0), "positive")
    neg_site = ChargeSite("B", 1, "GLU", "OE1", (0.0, 0.0, 12.0), "negative")
    bridge = SaltBridge(pos_site, neg_site, 3.0)
    weighted = fit_interface_plane(pair, bridges=[bridge])
    # The triple-weighted bridge midpoint at z=10.5 must pull the origin up.
    assert weighted.origin[2] > plain.origin[2] + 0.1


def test_plane_dict_roundtrip():
    plane = InterfacePlane(
        origin=np.array([1.0, 2.0, 3.0]),
        normal=np.array([0.0, 0.0, 1.0]),
        u=np.array([1.0, 0.0, 0.0]),
        v=np.array([0.0, 1.0, 0.0]),
    )
    again = InterfacePlane.from_dict(plane.to_dict())
    assert np.allclose(again.origin, plane.origin)
    assert np.allclose(again.normal, plane.normal)


def test_invalid_axes_rejected():
    with pytest.raises(ValueError):
        InterfacePlane(
            origin=np.zeros(3),
            normal=np.array([0.0, 0.0, 2.0]),
            u=np.array([1.0, 0.0, 0.0]),
            v=np.array([0.0, 1.0, 0.0]),
        )
