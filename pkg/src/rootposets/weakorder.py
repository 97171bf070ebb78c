"""The weak order on subsets of roots, its level lattices, and a verifier.

Level formulas (meet shown; join is the mirror image):

    All         (R+ u S+) | (R- n S-)
    Antisym     same formulas, antisymmetry is preserved
    Semiclosed  cl(R+ u S+) | (R- n S-)
    Closed      ncd( cl(R+ u S+) | (R- n S-) )
    Posets      Closed formulas; they preserve antisymmetry

verify_lattice certifies lattice-ness of an explicit family by brute
force and optionally checks a level formula against the brute-force
meets and joins, pair by pair.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import ContractViolationError, ResourceCapError, UnsupportedOperationError
from .rootset import RootSet, classify, closure_bits, closure_deletion, _indices

VERIFY_CAP = 5000


class Level(enum.Enum):
    ALL = "all"
    ANTISYM = "antisym"
    SEMICLOSED = "semiclosed"
    CLOSED = "closed"
    POSETS = "posets"


def weak_le(rset, sset):
    """R <= S iff R+ contains S+ and R- is contained in S-."""
    rset._check_same(sset)
    return weak_le_bits(rset.system, rset.bits, sset.bits)


def weak_le_bits(system, rbits, sbits):
    rp, sp = rbits & system.pos_mask, sbits & system.pos_mask
    rn, sn = rbits & system.neg_mask, sbits & system.neg_mask
    return (rp | sp) == rp and (rn & sn) == rn


def _level_member(system, bits, level):
    flags = classify(RootSet(system, bits))
    if level is Level.ALL:
        return True
    if level is Level.ANTISYM:
        return flags.antisymmetric
    if level is Level.SEMICLOSED:
        return flags.semiclosed
    if level is Level.CLOSED:
        return flags.closed
    return flags.poset


def lattice_op_bits(system, level, direction, rbits, sbits):
    """Meet or join at a level, raw-bits variant without membership checks."""
    pos, neg = system.pos_mask, system.neg_mask
    if direction == "meet":
        p = (rbits | sbits) & pos
        n = rbits & sbits & neg
        if level in (Level.SEMICLOSED, Level.CLOSED, Level.POSETS):
            p = closure_bits(system, p)
        out = p | n
        if level in (Level.CLOSED, Level.POSETS):
            out = closure_deletion(RootSet(system, out), "negative").bits
        return out
    if direction == "join":
        p = rbits & sbits & pos
        n = (rbits | sbits) & neg
        if level in (Level.SEMICLOSED, Level.CLOSED, Level.POSETS):
            n = closure_bits(system, n)
        out = p | n
        if level in (Level.CLOSED, Level.POSETS):
            out = closure_deletion(RootSet(system, out), "positive").bits
        return out
    raise ContractViolationError("direction must be 'meet' or 'join'")


def lattice_op(level, direction, rset, sset, check_membership=True):
    """Meet/join of two sets inside the given level of the weak order."""
    rset._check_same(sset)
    system = rset.system
    if level in (Level.SEMICLOSED, Level.CLOSED, Level.POSETS):
        if not system.crystallographic:
            raise UnsupportedOperationError(
                f"{level.value} lattice operations need a crystallographic system")
    if check_membership:
        for x in (rset, sset):
            if not _level_member(system, x.bits, level):
                raise ContractViolationError(
                    f"input is not in level {level.value}")
    bits = lattice_op_bits(system, level, direction, rset.bits, sset.bits)
    return RootSet(system, bits)


def covers(level, rset):
    """Elements covering R in the level's weak order, by the cover formulas.

    The closed level has no published cover description; use
    verify_lattice / hasse on an explicit family there.
    """
    system, bits = rset.system, rset.bits
    if level is Level.CLOSED:
        raise UnsupportedOperationError(
            "no cover formula at the closed level; use the generic path")
    if not _level_member(system, bits, level):
        raise ContractViolationError(f"input is not in level {level.value}")
    table = system.sum_table
    pos_in = _indices(bits & system.pos_mask)
    neg_in = _indices(bits & system.neg_mask)
    members = _indices(bits)
    out = []

    def decomposable(alpha, pool):
        # at the posets level a mixed-sign pair summing to alpha also
        # obstructs the deletion (the remainder would not be closed)
        for g in pool:
            row = table[g]
            for d in pool:
                if row[d] == alpha:
                    return True
        return False

    for alpha in pos_in:
        if level is Level.SEMICLOSED and decomposable(alpha, pos_in):
            continue
        if level is Level.POSETS and decomposable(alpha, members):
            continue
        out.append(RootSet(system, bits & ~(1 << alpha)))

    neg_candidates = _indices(system.neg_mask & ~bits)
    for beta in neg_candidates:
        if level in (Level.ANTISYM, Level.POSETS):
            if (bits >> system.neg(beta)) & 1:
                continue
        if level is Level.SEMICLOSED:
            anchors = neg_in
        elif level is Level.POSETS:
            anchors = members
        else:
            anchors = []
        row = table[beta]
        if any(row[g] >= 0 and not (bits >> row[g]) & 1 for g in anchors):
            continue
        out.append(RootSet(system, bits | (1 << beta)))
    return out


@dataclass
class LatticeReport:
    family_size: int
    is_lattice: bool
    formula_matches_bruteforce: Optional[bool]
    graded: bool
    witness: Optional[tuple] = None
    cover_count: int = 0
    level: Optional[Level] = None


def canonical_sort(family):
    """Deterministic family order: by (|R-| - |R+|, bits)."""
    return sorted(family, key=lambda r: (r.grade(), r.bits))


def _below_masks(system, bits_list):
    k = len(bits_list)
    pos, neg = system.pos_mask, system.neg_mask
    keys = [(b & pos, b & neg) for b in bits_list]
    below = [0] * k  # below[i] bit j set iff family[j] <= family[i]
    above = [0] * k
    for i in range(k):
        pi, ni = keys[i]
        for j in range(k):
            pj, nj = keys[j]
            if (pj | pi) == pj and (nj & ni) == nj:  # j <= i
                below[i] |= 1 << j
                above[j] |= 1 << i
    return below, above


def verify_lattice(family, formula=None, cap=VERIFY_CAP):
    """Brute-force lattice certification of a family under the weak order.

    When ``formula`` names a level, additionally checks that the level's
    meet/join formulas agree with the brute-force result on every pair.
    Gradedness is read off the cover graph of the family.
    """
    family = canonical_sort(family)
    k = len(family)
    if k > cap:
        raise ResourceCapError(f"family of size {k} exceeds the cap {cap}")
    if k == 0:
        return LatticeReport(0, True, None if formula is None else True, True)
    system = family[0].system
    bits_list = [r.bits for r in family]
    index_of = {b: i for i, b in enumerate(bits_list)}
    if len(index_of) != k:
        raise ContractViolationError("family contains duplicates")
    below, above = _below_masks(system, bits_list)
    grades = [r.grade() for r in family]

    is_lattice = True
    formula_ok = None if formula is None else True
    witness = None

    def bruteforce_extremum(common, masks):
        # unique element of `common` dominating (resp. dominated by) all of it
        best, best_grade = -1, None
        m = common
        while m:
            low = m & -m
            idx = low.bit_length() - 1
            m ^= low
            if best_grade is None or grades[idx] > best_grade:
                best, best_grade = idx, grades[idx]
        if best < 0:
            return None
        return best if common & ~masks[best] == 0 else None

    for i in range(k):
        bi = below[i]
        ai = above[i]
        for j in range(i + 1, k):
            lows = bi & below[j]
            highs = ai & above[j]
            if formula is not None:
                mbits = lattice_op_bits(system, formula, "meet",
                                        bits_list[i], bits_list[j])
                jbits = lattice_op_bits(system, formula, "join",
                                        bits_list[i], bits_list[j])
                mi = index_of.get(mbits)
                ji = index_of.get(jbits)
                ok = (
                    mi is not None and ji is not None
                    and (lows >> mi) & 1 and (highs >> ji) & 1
                    and lows & ~below[mi] == 0
                    and highs & ~above[ji] == 0
                )
                if not ok:
                    formula_ok = False
                    is_lattice = is_lattice and _slow_pair_check(
                        grades, below, above, lows, highs)
                    if witness is None:
                        witness = (family[i], family[j])
                    continue
            else:
                glb = bruteforce_extremum(lows, below)
                if glb is None:
                    is_lattice = False
                    if witness is None:
                        witness = (family[i], family[j])
                    continue
                lub = _lub(grades, highs, above)
                if lub is None:
                    is_lattice = False
                    if witness is None:
                        witness = (family[i], family[j])

    cover_count, graded = _cover_graph(k, below, grades)
    return LatticeReport(
        family_size=k,
        is_lattice=is_lattice,
        formula_matches_bruteforce=formula_ok,
        graded=graded,
        witness=witness,
        cover_count=cover_count,
        level=formula,
    )


def _lub(grades, highs, above):
    best, best_grade = -1, None
    m = highs
    while m:
        low = m & -m
        idx = low.bit_length() - 1
        m ^= low
        if best_grade is None or grades[idx] < best_grade:
            best, best_grade = idx, grades[idx]
    if best < 0:
        return None
    return best if highs & ~above[best] == 0 else None


def _slow_pair_check(grades, below, above, lows, highs):
    glb = None
    m = lows
    best_grade = None
    while m:
        low = m & -m
        idx = low.bit_length() - 1
        m ^= low
        if best_grade is None or grades[idx] > best_grade:
            glb, best_grade = idx, grades[idx]
    if glb is None or lows & ~below[glb]:
        return False
    lub = _lub(grades, highs, above)
    return lub is not None


def _cover_graph(k, below, grades):
    """Count covers by transitive reduction and check grade steps of 1."""
    cover_count = 0
    graded = True
    for i in range(k):
        strict_below = below[i] & ~(1 << i)
        m = strict_below
        while m:
            low = m & -m
            j = low.bit_length() - 1
            m ^= low
            if _exists_between(below, j, i, strict_below):
                continue
            cover_count += 1
            if grades[i] - grades[j] != 1:
                graded = False
    return cover_count, graded


def _exists_between(below, j, i, strict_below_i):
    # some x != i, j with j <= x <= i
    m = strict_below_i & ~(1 << j)
    while m:
        low = m & -m
        x = low.bit_length() - 1
        m ^= low
        if (below[x] >> j) & 1:
            return True
    return False


def hasse_edges(family):
    """Transitive reduction of weak_le on the family; deterministic order."""
    family = canonical_sort(family)
    k = len(family)
    if k == 0:
        return family, []
    system = family[0].system
    below, _ = _below_masks(system, [r.bits for r in family])
    edges = []
    for i in range(k):
        strict = below[i] & ~(1 << i)
        m = strict
        while m:
            low = m & -m
            j = low.bit_length() - 1
            m ^= low
            if not _exists_between(below, j, i, strict):
                edges.append((j, i))
    edges.sort()
    return family, edges


def export_hasse(family, fmt="dot"):
    """DOT or JSON document of the Hasse diagram of the family."""
    if len(family) > 10_000:
        raise ResourceCapError("hasse export capped at 10^4 nodes")
    from .rootset import format_set_literal
    nodes, edges = hasse_edges(family)
    labels = [format_set_literal(r) for r in nodes]
    if fmt == "dot":
        lines = ["digraph weak_order {", "  rankdir=BT;"]
        for i, lab in enumerate(labels):
            lines.append(f'  n{i} [label="{lab}"];')
        for a, b in edges:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines)
    if fmt == "json":
        import json
        return json.dumps({"nodes": labels, "edges": edges}, indent=0)
    raise ContractViolationError(f"unknown hasse format {fmt!r}")
