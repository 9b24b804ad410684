#!/usr/bin/env python3
"""Generate the committed synthetic PDB fixtures.

The sandbox this project builds in has no access to the real Protein Data
Bank, so the test fixtures are synthetic stand-ins: compact two-chain
complexes with protein-like atom density, realistic residue/atom naming,
and engineered inter-chain salt bridges.  Entry codes, chain letters and
the signature trypsin-Asp/inhibitor-Lys contact of 2ptc mirror the real
complexes so the pipeline configuration reads naturally, but the geometry
is artificial.  Use scripts/fetch_pdb.py to swap in real structures.

Deterministic: fixed per-entry seeds, stable iteration order.
Writes tests/fixtures/pdb/<code>.pdb.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "pdb"

CA_STEP = 3.8
CA_MIN_SEP = 3.5
RESIDUE_VOLUME = 135.0  # A^3, typical per-residue volume

# Background residue frequencies (roughly natural abundance).
RESIDUE_POOL = [
    ("ALA", 8), ("ARG", 5), ("ASN", 4), ("ASP", 5), ("CYS", 1),
    ("GLN", 4), ("GLU", 6), ("GLY", 7), ("HIS", 2), ("ILE", 6),
    ("LEU", 9), ("LYS", 6), ("MET", 2), ("PHE", 4), ("PRO", 5),
    ("SER", 7), ("THR", 6), ("TRP", 1), ("TYR", 3), ("VAL", 7),
]

# Charged-group atoms added beyond the backbone, with distance from CB.
SIDE_CHAIN_ATOMS = {
    "ASP": [("OD1", "O", 2.4), ("OD2", "O", 2.4)],
    "GLU": [("OE1", "O", 3.1), ("OE2", "O", 3.1)],
    "LYS": [("NZ", "N", 3.9)],
    "ARG": [("NE", "N", 3.4), ("NH1", "N", 4.4), ("NH2", "N", 4.4)],
    "HIS": [("ND1", "N", 2.2), ("NE2", "N", 3.2)],
}

POSITIVE_TYPES = ("LYS", "ARG", "HIS")
NEGATIVE_TYPES = ("ASP", "GLU")

# code: (receptor chain, ligand chain, receptor n_res, ligand n_res,
#        n_bridges, receptor first residue number, ligand first number,
#        quirks)
ENTRIES = {
    "1acb": ("E", "I", 130, 56, 4, 1, 1, {"altloc"}),
    "1atn": ("A", "D", 150, 110, 3, 1, 1, {"waters"}),
    "1avx": ("A", "B", 120, 85, 4, 1, 1, set()),
    "1buh": ("A", "B", 115, 70, 3, 1, 1, set()),
    "1bvn": ("P", "T", 155, 50, 4, 1, 1, {"waters"}),
    "1emv": ("A", "B", 90, 78, 5, 1, 1, {"multimodel"}),
    "1fss": ("A", "B", 160, 55, 4, 1, 1, {"noelement"}),
    "1grn": ("A", "B", 110, 95, 3, 1, 1, {"waters"}),
    "2ptc": ("E", "I", 180, 58, 3, 16, 1, {"waters", "ion"}),
    "4kc3": ("A", "B", 100, 80, 4, 1, 1, set()),
}

SEEDS = {code: 7000 + i for i, code in enumerate(sorted(ENTRIES))}

# 2ptc carries the signature contact: Asp 189 on trypsin (E) paired with
# Lys 15 on the inhibitor (I).
FORCED_BRIDGE = {"2ptc": (("ASP", 189), ("LYS", 15))}


def blob_radius(n_res: int) -> float:
    return (n_res * RESIDUE_VOLUME * 3.0 / (4.0 * math.pi)) ** (1.0 / 3.0)


def random_unit(rng) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def walk_backbone(rng, n_res: int, radius: float, face_x: float) -> np.ndarray:
    """Self-avoiding random walk of CA positions inside a face-capped ball.

    The ball is cut by the plane x = face_x (positive side removed), which
    gives the blob a flat face; facing two such blobs produces a broad
    contact patch like a real protein-protein interface.
    """

    def inside(p) -> bool:
        return np.linalg.norm(p) <= radius and p[0] <= face_x

    cas = [np.array([-radius * 0.2, 0.0, 0.0]) + rng.standard_normal(3) * 0.5]
    while len(cas) < n_res:
        prev = cas[-1]
        placed = False
        for _ in range(80):
            cand = prev + random_unit(rng) * CA_STEP
            if not inside(cand):
                continue
            if len(cas) > 1:
                d = np.linalg.norm(np.array(cas[:-1]) - cand, axis=1)
                if d.min() < CA_MIN_SEP:
                    continue
            cas.append(cand)
            placed = True
            break
        if not placed:
            # Chain break: restart from a fresh interior point.
            for _ in range(200):
                cand = random_unit(rng) * radius * rng.random() ** (1 / 3)
                if not inside(cand):
                    continue
                d = np.linalg.norm(np.array(cas) - cand, axis=1)
                if d.min() >= CA_MIN_SEP:
                    cas.append(cand)
                    placed = True
                    break
            if not placed:
                raise RuntimeError("could not place CA; lower the density")
    return np.array(cas)


def pick_residue_names(rng, n_res: int) -> list[str]:
    names = [name for name, w in RESIDUE_POOL for _ in range(w)]
    return [names[rng.integers(len(names))] for _ in range(n_res)]


def build_residue(
    rng, name: str, ca: np.ndarray, face_x: float
) -> list[tuple[str, str, np.ndarray]]:
    """Backbone plus (for charged types) the charged-group atoms.

    Atoms are kept on the blob side of the face plane so the flat contact
    surface survives; side chains near the face end up lying along it.
    """

    def offset(base: np.ndarray, dist: float) -> np.ndarray:
        for _ in range(30):
            pos = base + random_unit(rng) * dist
            if pos[0] <= face_x:
                return pos
        pos = base + random_unit(rng) * dist
        pos[0] = face_x
        return pos

    atoms = [("N", "N", offset(ca, 1.46)), ("CA", "C", ca)]
    c_pos = offset(ca, 1.52)
    atoms.append(("C", "C", c_pos))
    atoms.append(("O", "O", offset(c_pos, 1.23)))
    if name != "GLY":
        cb = offset(ca, 1.53)
        atoms.append(("CB", "C", cb))
        for atom_name, element, dist in SIDE_CHAIN_ATOMS.get(name, []):
            atoms.append((atom_name, element, offset(cb, dist)))
    return atoms


def face_layer(rng, cas: np.ndarray, radius: float, face_x: float) -> list[np.ndarray]:
    """Extra CA positions tiling the flat face so the interface is densely
    packed, the way buried contact surfaces are."""
    disk_r = math.sqrt(max(radius * radius - face_x * face_x, 1.0)) * 0.9
    layer = []
    step = 4.0
    n = int(disk_r // step) + 1
    for iy in range(-n, n + 1):
        for iz in range(-n, n + 1):
            y = iy * step + float(rng.uniform(-0.7, 0.7))
            z = iz * step + float(rng.uniform(-0.7, 0.7))
            if math.hypot(y, z) > disk_r:
                continue
            x = face_x - 1.0 + float(rng.uniform(-0.5, 0.3))
            cand = np.array([x, y, z])
            existing = np.vstack([cas] + layer) if layer else cas
            if np.linalg.norm(existing - cand, axis=1).min() >= 3.2:
                layer.append(cand)
    return layer


def build_chain(rng, n_res: int, flip: bool = False) -> list[dict]:
    """One chain blob with its flat face toward +x (or -x when flipped)."""
    radius = blob_radius(n_res) * 1.05  # compensate the cut-off cap volume
    face_x = 0.55 * radius
    cas = walk_backbone(rng, n_res, radius, face_x=face_x)
    cas = np.vstack([cas] + face_layer(rng, cas, radius, face_x))
    names = pick_residue_names(rng, len(cas))
    residues = [
        {"name": name, "ca": ca, "atoms": build_residue(rng, name, ca, face_x + 0.4)}
        for name, ca in zip(names, cas)
    ]
    if flip:
        mirror = np.array([-1.0, 1.0, 1.0])
        for res in residues:
            res["ca"] = res["ca"] * mirror
            res["atoms"] = [(n, e, p * mirror) for (n, e, p) in res["atoms"]]
    return residues


def chain_coords(residues: list[dict]) -> np.ndarray:
    return np.array([pos for res in residues for (_, _, pos) in res["atoms"]])


def shift_into_contact(rng, receptor, ligand, target=3.05,
                       min_clearance=2.85, contact_pairs=60):
    """Translate the ligand along +x until the chains meet over a patch.

    First touch (min distance = `target`), then press further while the
    closest pair stays above `min_clearance` until at least
    `contact_pairs` atom pairs lie within 4.6 A, so the interface is a
    broad patch rather than a point.
    """
    r1 = chain_coords(receptor)
    lig_local = chain_coords(ligand)

    def stats(shift):
        moved = lig_local + np.array([shift, 0.0, 0.0])
        best = np.inf
        close = 0
        for i in range(0, len(moved), 256):
            block = moved[i : i + 256]
            d = np.linalg.norm(r1[:, None, :] - block[None, :, :], axis=2)
            best = min(best, float(d.min()))
            close += int((d <= 4.6).sum())
        return best, close

    lo = 0.0
    hi = float(r1[:, 0].max() - lig_local[:, 0].min()) + 60.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if stats(mid)[0] < target:
            lo = mid
        else:
            hi = mid
    shift = hi
    while True:
        best, close = stats(shift - 0.1)
        if close >= contact_pairs and stats(shift)[1] >= contact_pairs:
            break
        if best < min_clearance:
            break
        shift -= 0.1

    offset = np.array([shift, 0.0, 0.0])
    for res in ligand:
        res["ca"] = res["ca"] + offset
        res["atoms"] = [(n, e, p + offset) for (n, e, p) in res["atoms"]]
    return shift


def contact_sites(receptor, ligand, n_sites, rng, spacing=5.0, core_radius=8.0):
    """Spread points over the core of the inter-chain contact patch.

    Sites stay within `core_radius` of the patch centroid so engineered
    bridges land where both slab footprints have solid coverage.
    """
    rc = chain_coords(receptor)
    lc = chain_coords(ligand)
    mids = []
    for i in range(len(rc)):
        d = np.linalg.norm(lc - rc[i], axis=1)
        for j in np.nonzero(d <= 5.0)[0]:
            mids.append(0.5 * (rc[i] + lc[j]))
    if not mids:
        raise RuntimeError("no contact patch; blobs failed to touch")
    mids = np.array(mids)
    center = mids.mean(axis=0)
    core = mids[np.linalg.norm(mids - center, axis=1) <= core_radius]
    if len(core) == 0:
        core = mids
    order = rng.permutation(len(core))
    chosen = [core[order[0]]]
    for idx in order[1:]:
        if len(chosen) >= n_sites:
            break
        if min(np.linalg.norm(core[idx] - c) for c in chosen) >= spacing:
            chosen.append(core[idx])
    i = 0
    while len(chosen) < n_sites and i < len(order):  # relax spacing if needed
        cand = core[order[i]]
        if min(np.linalg.norm(cand - c) for c in chosen) >= 3.0:
            chosen.append(cand)
        i += 1
    return chosen[:n_sites]


def nearest_free_residue(residues, point, used, prefer_index=None):
    if prefer_index is not None and prefer_index not in used:
        return prefer_index
    best, best_d = None, np.inf
    for i, res in enumerate(residues):
        if i in used:
            continue
        d = float(np.linalg.norm(res["ca"] - point))
        if d < best_d:
            best, best_d = i, d
    return best


def convert_to_charged(rng, res: dict, new_type: str, anchor: np.ndarray, tangent: np.ndarray):
    """Rewrite a residue as a charged type whose group sits at `anchor`."""
    res["name"] = new_type
    ca = res["ca"]
    backbone = [(n, e, p) for (n, e, p) in res["atoms"] if n in ("N", "CA", "C", "O")]
    cb = ca + (anchor - ca) / np.linalg.norm(anchor - ca) * 1.53
    atoms = backbone + [("CB", "C", cb)]
    side = SIDE_CHAIN_ATOMS[new_type]
    atoms.append((side[0][0], side[0][1], anchor))
    for atom_name, element, _ in side[1:]:
        jitter = tangent * 1.4 + random_unit(rng) * 0.3
        atoms.append((atom_name, element, anchor + jitter))
    res["atoms"] = atoms


def engineer_bridges(rng, code, receptor, ligand, n_bridges, start_r, start_l):
    """Convert interface residues into opposite-charge pairs across the gap."""
    sites = contact_sites(receptor, ligand, n_bridges, rng)
    used_r: set[int] = set()
    used_l: set[int] = set()
    forced = FORCED_BRIDGE.get(code)
    bridge_specs = []

    for k, site in enumerate(sites):
        gap = float(rng.uniform(2.7, 3.6))
        x_hat = np.array([1.0, 0.0, 0.0])
        tangent = np.cross(x_hat, random_unit(rng))
        tangent /= np.linalg.norm(tangent)
        q_r = site - x_hat * (gap / 2.0)
        q_l = site + x_hat * (gap / 2.0)

        if forced is not None and k == 0:
            (rec_type, rec_seq), (lig_type, lig_seq) = forced
            ri = nearest_free_residue(receptor, q_r, used_r)
            li = nearest_free_residue(ligand, q_l, used_l)
            # Content swap puts the converted residues at the forced
            # sequence numbers while keeping file order by number.
            rj = rec_seq - start_r
            lj = lig_seq - start_l
            receptor[ri], receptor[rj] = receptor[rj], receptor[ri]
            ligand[li], ligand[lj] = ligand[lj], ligand[li]
            ri, li = rj, lj
            r_type, l_type = rec_type, lig_type
        else:
            if k % 2 == 0:
                r_type = POSITIVE_TYPES[rng.integers(len(POSITIVE_TYPES))]
                l_type = NEGATIVE_TYPES[rng.integers(len(NEGATIVE_TYPES))]
            else:
                r_type = NEGATIVE_TYPES[rng.integers(len(NEGATIVE_TYPES))]
                l_type = POSITIVE_TYPES[rng.integers(len(POSITIVE_TYPES))]
            ri = nearest_free_residue(receptor, q_r, used_r)
            li = nearest_free_residue(ligand, q_l, used_l)

        convert_to_charged(rng, receptor[ri], r_type, q_r, tangent)
        convert_to_charged(rng, ligand[li], l_type, q_l, -tangent)
        used_r.add(ri)
        used_l.add(li)
        bridge_specs.append((r_type, start_r + ri, l_type, start_l + li, gap))
    neutralize_stray_bridges(receptor, ligand, used_r, used_l)
    return bridge_specs


def _charged_atoms(residues, engineered):
    """(residue index, sign, atom position) for qualifying charged atoms."""
    out = []
    for idx, res in enumerate(residues):
        name = res["name"]
        if name in POSITIVE_TYPES:
            sign = +1
        elif name in NEGATIVE_TYPES:
            sign = -1
        else:
            continue
        wanted = {a for a, _, _ in SIDE_CHAIN_ATOMS[name]}
        for atom_name, _, pos in res["atoms"]:
            if atom_name in wanted:
                out.append((idx, sign, pos, idx in engineered))
    return out


def neutralize_stray_bridges(receptor, ligand, engineered_r, engineered_l, margin=4.4):
    """Mutate background residues that would form accidental cross-chain
    bridges, so the engineered contacts are the only ones."""
    while True:
        rec_atoms = _charged_atoms(receptor, engineered_r)
        lig_atoms = _charged_atoms(ligand, engineered_l)
        mutated = False
        for ri, rsign, rpos, r_eng in rec_atoms:
            for li, lsign, lpos, l_eng in lig_atoms:
                if rsign == lsign or (r_eng and l_eng):
                    continue
                if np.linalg.norm(rpos - lpos) > margin:
                    continue
                idx, side = (li, ligand) if not l_eng else (ri, receptor)
                res = side[idx]
                res["name"] = "SER"
                res["atoms"] = [
                    (n, e, p) for (n, e, p) in res["atoms"] if n in ("N", "CA", "C", "O", "CB")
                ]
                mutated = True
                break
            if mutated:
                break
        if not mutated:
            return


def format_atom_line(serial, name, alt_loc, res_name, chain, seq, icode, pos,
                     element="", het=False, occupancy=1.0, bfactor=0.0):
    record = "HETATM" if het else "ATOM  "
    if len(element) >= 2:
        name_field = f"{name:<4}"
    else:
        name_field = f" {name:<3}" if len(name) <= 3 else f"{name:<4}"
    line = (
        f"{record}{serial:>5} {name_field}{alt_loc}{res_name:>3} {chain}"
        f"{seq:>4}{icode}   {pos[0]:8.3f}{pos[1]:8.3f}{pos[2]:8.3f}"
        f"{occupancy:6.2f}{bfactor:6.2f}"
    )
    if element:
        line += " " * 10 + f"{element:>2}"
    return line


def chain_lines(rng, residues, chain_id, start_seq, serial, quirks):
    lines = []
    altloc_targets = set()
    if "altloc" in quirks:
        altloc_targets = set(rng.choice(len(residues), size=5, replace=False).tolist())
    for index, res in enumerate(residues):
        seq = start_seq + index
        for atom_name, element, pos in res["atoms"]:
            drop_element = "noelement" in quirks and rng.random() < 0.4
            elem = "" if drop_element else element
            if atom_name == "CB" and index in altloc_targets:
                lines.append(format_atom_line(
                    serial, atom_name, "A", res["name"], chain_id, seq, " ",
                    pos, elem, occupancy=0.60))
                serial += 1
                lines.append(format_atom_line(
                    serial, atom_name, "B", res["name"], chain_id, seq, " ",
                    pos + random_unit(rng) * 0.6, elem, occupancy=0.40))
                serial += 1
            else:
                lines.append(format_atom_line(
                    serial, atom_name, " ", res["name"], chain_id, seq, " ",
                    pos, elem))
                serial += 1
    last_seq = start_seq + len(residues) - 1
    res_name = residues[-1]["name"]
    lines.append(f"TER   {serial:>5}      {res_name:>3} {chain_id}{last_seq:>4}")
    serial += 1
    return lines, serial


def water_lines(rng, receptor, ligand, chain_id, serial, count=12, seq0=901):
    coords = np.vstack([chain_coords(receptor), chain_coords(ligand)])
    center = coords.mean(axis=0)
    span = float(np.linalg.norm(coords - center, axis=1).max())
    lines = []
    for i in range(count):
        pos = center + random_unit(rng) * (span + 2.0 + 4.0 * rng.random())
        lines.append(format_atom_line(
            serial, "O", " ", "HOH", chain_id, seq0 + i, " ", pos, "O", het=True))
        serial += 1
    return lines, serial


def generate_entry(code: str) -> str:
    chain_r, chain_l, n_r, n_l, n_bridges, start_r, start_l, quirks = ENTRIES[code]
    rng = np.random.default_rng(SEEDS[code])

    receptor = build_chain(rng, n_r)
    ligand = build_chain(rng, n_l, flip=True)
    shift_into_contact(rng, receptor, ligand, target=3.05)
    bridge_specs = engineer_bridges(
        rng, code, receptor, ligand, n_bridges, start_r, start_l
    )

    body = []
    serial = 1
    lines, serial = chain_lines(rng, receptor, chain_r, start_r, serial, quirks)
    body.extend(lines)
    lines, serial = chain_lines(rng, ligand, chain_l, start_l, serial, quirks)
    body.extend(lines)
    if "ion" in quirks:
        coords = chain_coords(receptor)
        pos = coords.mean(axis=0)
        body.append(format_atom_line(
            serial, "CA", " ", "CA", chain_r, 501, " ", pos, "CA", het=True))
        serial += 1
    if "waters" in quirks:
        lines, serial = water_lines(rng, receptor, ligand, chain_r, serial)
        body.extend(lines)

    header = [
        f"HEADER    SYNTHETIC COMPLEX                       01-JAN-20   {code.upper()}",
        "REMARK   1 SYNTHETIC FIXTURE FOR OFFLINE TESTING",
        "REMARK   1 GENERATED BY TOOLS/MAKE_FIXTURES.PY; GEOMETRY IS ARTIFICIAL",
        "REMARK   1 ENTRY CODE AND CHAIN IDS MIRROR THE REAL COMPLEX FOR NAMING ONLY",
    ]
    for r_type, r_seq, l_type, l_seq, gap in bridge_specs:
        header.append(
            f"REMARK   2 ENGINEERED BRIDGE {r_type}{r_seq}({chain_r}) - "
            f"{l_type}{l_seq}({chain_l}) GAP {gap:5.2f} A"
        )

    if "multimodel" in quirks:
        jitter = np.random.default_rng(SEEDS[code] + 1)
        alt = []
        for line in body:
            if line.startswith(("ATOM", "HETATM")):
                x = float(line[30:38]) + jitter.uniform(-1, 1)
                y = float(line[38:46]) + jitter.uniform(-1, 1)
                z = float(line[46:54]) + jitter.uniform(-1, 1)
                alt.append(line[:30] + f"{x:8.3f}{y:8.3f}{z:8.3f}" + line[54:])
            else:
                alt.append(line)
        body = (["MODEL        1"] + body + ["ENDMDL"]
                + ["MODEL        2"] + alt + ["ENDMDL"])

    return "\n".join(header + body + ["END"]) + "\n"


def self_check(code: str, text: str) -> None:
    """Independent sanity pass over the emitted text (no package imports)."""
    atoms = []
    model = 0
    for line in text.splitlines():
        if line.startswith("MODEL"):
            model += 1
        if line.startswith("ATOM") and model <= 1:
            atoms.append(
                (
                    line[12:16].strip(),
                    line[17:20].strip(),
                    line[21],
                    int(line[22:26]),
                    np.array([float(line[30:38]), float(line[38:46]), float(line[46:54])]),
                )
            )
    chain_r, chain_l = ENTRIES[code][0], ENTRIES[code][1]
    pos_atoms = {"LYS": ["NZ"], "ARG": ["NE", "NH1", "NH2"], "HIS": ["ND1", "NE2"]}
    neg_atoms = {"ASP": ["OD1", "OD2"], "GLU": ["OE1", "OE2"]}
    pairs = set()
    for name1, res1, ch1, seq1, p1 in atoms:
        if res1 in pos_atoms and name1 in pos_atoms[res1]:
            for name2, res2, ch2, seq2, p2 in atoms:
                if ch2 != ch1 and res2 in neg_atoms and name2 in neg_atoms[res2]:
                    if np.linalg.norm(p1 - p2) <= 4.0:
                        pairs.add(((ch1, seq1), (ch2, seq2)))
    wanted = min(2, ENTRIES[code][4])
    assert len(pairs) >= wanted, (
        f"{code}: only {len(pairs)} bridging residue pairs, wanted >= {wanted}"
    )
    if code in FORCED_BRIDGE:
        (rt, rs), (lt, ls) = FORCED_BRIDGE[code]
        have_r = any(r == rt and s == rs and c == chain_r for _, r, c, s, _ in atoms)
        have_l = any(r == lt and s == ls and c == chain_l for _, r, c, s, _ in atoms)
        assert have_r and have_l, f"{code}: forced bridge residues missing"


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for code in sorted(ENTRIES):
        text = generate_entry(code)
        self_check(code, text)
        out = OUT_DIR / f"{code}.pdb"
        out.write_text(text)
        n_lines = text.count("\n")
        print(f"wrote {out} ({n_lines} lines)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
