"""The nine poset families of the permutahedron, associahedra, and cube.

Each family has a construction (from group elements, intervals, cosets,
Cambrian classes, or descent classes) and, where the source material
gives one, an intrinsic membership predicate on posets; the two are
asserted to coincide by verify_family_equality.  The COEP predicate is
conjectural and must be opted into explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import cambrian as camb
from . import weyl as wy
from .errors import ContractViolationError, UnsupportedOperationError
from .linalg import strict_separation_exists
from .rootset import RootSet, classify, closure_bits, _indices

FAMILY_TAGS = ("WOEP", "WOIP", "WOFP", "COEP", "COIP", "COFP", "BOEP", "BOIP", "BOFP")
CAMBRIAN_TAGS = ("COEP", "COIP", "COFP")


@dataclass(frozen=True)
class FamilyId:
    tag: str
    coxeter: Optional[object] = None  # CoxeterElement or spec for Cambrian tags

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ContractViolationError(f"unknown family tag {self.tag!r}")

    def normalized_tag(self):
        # BOFP is the same family as BOIP
        return "BOIP" if self.tag == "BOFP" else self.tag


def _resolve_coxeter(group, family):
    if family.tag in CAMBRIAN_TAGS:
        spec = family.coxeter if family.coxeter is not None else "lin"
        return camb.coxeter_element(group, spec)
    return None


def descent_classes(group):
    """Map A (frozenset of simple positions) -> list of elements with des = A.

    Each class is checked to be a weak order interval with unique
    extremes, matching the congruence framework.
    """
    buckets = {}
    for w in group.elements:
        buckets.setdefault(w.descents(), []).append(w)
    for key, members in buckets.items():
        lo = min(members, key=lambda w: w.length)
        hi = max(members, key=lambda w: w.length)
        for w in members:
            if not (lo.weak_le(w) and w.weak_le(hi)):
                raise ContractViolationError(
                    "descent class is not an interval; construction bug")
        buckets[key] = (lo, hi, members)
    return buckets


def boolean_element_poset(group, subset):
    """R(A) = cl(-A | (Delta \\ A)) for A a set of simple positions."""
    system = group.system
    bits = 0
    for i, s in enumerate(group.simple_root_indices):
        if i in subset:
            bits |= 1 << system.neg(s)
        else:
            bits |= 1 << s
    return RootSet(system, closure_bits(system, bits))


def construct_family(group, family):
    """Duplicate-free list of the family's posets, deterministic order."""
    system = group.system
    tag = family.normalized_tag()
    c = _resolve_coxeter(group, family)
    seen = {}

    def put(rset):
        seen.setdefault(rset.bits, rset)

    if tag == "WOEP":
        for w in group.elements:
            put(wy.element_poset(group, w))
    elif tag == "WOIP":
        for v in group.elements:
            for w in group.elements:
                if v.weak_le(w):
                    put(wy.interval_poset(group, v, w))
    elif tag == "WOFP":
        for coset in wy.enumerate_cosets(group):
            put(wy.coset_poset(group, coset))
    elif tag == "COEP":
        for cl in camb.cambrian_classes(c):
            put(wy.interval_poset(group, cl.bottom, cl.top))
    elif tag == "COIP":
        classes = camb.cambrian_classes(c)
        for x in classes:
            for y in classes:
                if camb.cambrian_le(c, x, y):
                    put(wy.interval_poset(group, x.bottom, y.top))
    elif tag == "COFP":
        cosets = wy.enumerate_cosets(group)
        for fc in camb.facial_cambrian_classes(c, cosets):
            bits = system.full_mask
            for coset in fc.members:
                bits &= wy.coset_poset(group, coset).bits
            put(RootSet(system, bits))
    elif tag == "BOEP":
        n = system.rank
        for mask in range(1 << n):
            put(boolean_element_poset(group, _mask_set(mask)))
    elif tag == "BOIP":
        n = system.rank
        for amask in range(1 << n):
            bmask = amask
            while True:
                lo = boolean_element_poset(group, _mask_set(amask))
                hi = boolean_element_poset(group, _mask_set(bmask))
                put(RootSet(system,
                            (lo.bits & system.neg_mask) | (hi.bits & system.pos_mask)))
                if bmask == (1 << n) - 1:
                    break
                bmask = (bmask + 1) | amask
    else:
        raise ContractViolationError(f"unhandled family {tag}")
    out = sorted(seen.values(), key=lambda r: (r.grade(), r.bits))
    return out


def _mask_set(mask):
    return frozenset(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def _same_sign_pairs(system):
    """(a, b, a+b) triples with a, b of one sign and a+b a root, each once."""
    out = []
    table = system.sum_table
    n = system.num_positive
    for lo, hi in ((0, n), (n, 2 * n)):
        for a in range(lo, hi):
            row = table[a]
            for b in range(a, hi):
                k = row[b]
                if k >= 0:
                    out.append((a, b, k))
    return out


def member_predicate(group, family, rset, allow_conjectural=False):
    """The intrinsic characterization of family membership, taken literally.

    Raises for COFP (the source material leaves it open) and for COEP
    unless allow_conjectural is set.
    """
    system = group.system
    tag = family.normalized_tag()
    bits = rset.bits
    if not classify(rset).poset:
        return False

    if tag == "WOEP":
        neg = system.negate_bits(bits)
        return (bits | neg) == system.full_mask

    if tag == "WOIP":
        for a, b, k in _same_sign_pairs(system):
            if (bits >> k) & 1 and not ((bits >> a) & 1 or (bits >> b) & 1):
                return False
        return True

    if tag == "WOFP":
        inside = [system.roots[i].coords for i in _indices(bits)]
        outside = [system.roots[i].coords
                   for i in _indices(system.full_mask & ~bits)]
        return strict_separation_exists(inside, outside, system.rank)

    if tag == "BOIP":
        for a, b, k in _same_sign_pairs(system):
            if (bits >> k) & 1 and not ((bits >> a) & 1 and (bits >> b) & 1):
                return False
        return True

    if tag == "BOEP":
        if not member_predicate(group, FamilyId("BOIP"), rset):
            return False
        neg = system.negate_bits(bits)
        have = bits | neg
        return all((have >> s) & 1 for s in group.simple_root_indices)

    if tag == "COIP":
        c = _resolve_coxeter(group, family)
        pos = camb.c_position_table(c)
        n = system.num_positive
        for a, b, k in _same_sign_pairs(system):
            if not (bits >> k) & 1:
                continue
            if a < n:  # positive pair: the <c-larger root must be present
                first, second = (a, b) if pos[a] < pos[b] else (b, a)
                if not (bits >> second) & 1:
                    return False
            else:      # negative pair, ordered through the positive versions
                pa, pb = system.neg(a), system.neg(b)
                first, second = (a, b) if pos[pa] < pos[pb] else (b, a)
                if not (bits >> first) & 1:
                    return False
        return True

    if tag == "COEP":
        if not allow_conjectural:
            raise UnsupportedOperationError(
                "the COEP characterization is conjectural; pass allow_conjectural")
        c = _resolve_coxeter(group, family)
        if not member_predicate(group, FamilyId("COIP", c), rset):
            return False
        good = camb.snake_decomposable_roots(c, rset)
        return len(good) == system.num_roots

    if tag == "COFP":
        raise UnsupportedOperationError(
            "no intrinsic COFP characterization is known; use construction lookup")

    raise ContractViolationError(f"unhandled family {tag}")


@dataclass
class FamilyEqualityReport:
    family: str
    system: str
    construction_count: int
    predicate_count: int
    equal: bool
    only_constructed: list
    only_predicate: list


def verify_family_equality(group, family, all_posets, allow_conjectural=False):
    """Constructed family == predicate filter over all posets of the system."""
    tag = family.normalized_tag()
    if tag == "COFP":
        raise UnsupportedOperationError("COFP has no predicate to compare")
    constructed = construct_family(group, family)
    cbits = {r.bits for r in constructed}
    pbits = {r.bits for r in all_posets
             if member_predicate(group, family, r,
                                 allow_conjectural=allow_conjectural)}
    return FamilyEqualityReport(
        family=tag,
        system=group.system.label,
        construction_count=len(cbits),
        predicate_count=len(pbits),
        equal=cbits == pbits,
        only_constructed=sorted(cbits - pbits),
        only_predicate=sorted(pbits - cbits),
    )


# -- family-internal lattice operations (for the sublattice suite) ---------

def woip_interval_of(group, rset):
    """The (min, max) of L(R) realizing a WOIP poset as R(v, v')."""
    cache = getattr(group, "_woip_interval_cache", None)
    if cache is None:
        cache = group._woip_interval_cache = {}
    got = cache.get(rset.bits)
    if got is not None:
        return got
    from .rootset import linear_extensions
    exts = linear_extensions(rset, group)
    if not exts:
        raise ContractViolationError("poset has no linear extensions")
    lo = min(exts, key=lambda w: w.length)
    hi = max(exts, key=lambda w: w.length)
    for w in exts:
        if not (lo.weak_le(w) and w.weak_le(hi)):
            raise ContractViolationError("extension set has no unique extremes")
    expect = (lo.poset_bits & group.system.neg_mask) | (
        hi.poset_bits & group.system.pos_mask)
    if expect != rset.bits:
        raise ContractViolationError("set is not a weak order interval poset")
    cache[rset.bits] = (lo, hi)
    return lo, hi


def woip_op(group, direction, rset, sset):
    """Meet/join inside WOIP via componentwise weak-order meet/join."""
    lv, lw = woip_interval_of(group, rset)
    rv, rw = woip_interval_of(group, sset)
    if direction == "meet":
        a, b = group.weak_meet(lv, rv), group.weak_meet(lw, rw)
    else:
        a, b = group.weak_join(lv, rv), group.weak_join(lw, rw)
    return wy.interval_poset(group, a, b)


def coip_op(group, c, direction, rset, sset):
    """Meet/join inside COIP(c) via the Cambrian class components."""
    lv, lw = woip_interval_of(group, rset)
    rv, rw = woip_interval_of(group, sset)
    for w, kind in ((lv, "sortable"), (rv, "sortable")):
        if not camb.is_sortable(c, w, kind):
            raise ContractViolationError("COIP bottom is not sortable")
    for w in (lw, rw):
        if not camb.is_sortable(c, w, "antisortable"):
            raise ContractViolationError("COIP top is not antisortable")
    if direction == "meet":
        a, b = group.weak_meet(lv, rv), group.weak_meet(lw, rw)
    else:
        a, b = group.weak_join(lv, rv), group.weak_join(lw, rw)
    # sortables/antisortables are sublattices, so (a, b) is again a COIP pair
    return wy.interval_poset(group, a, b)


def boip_components_of(group, rset):
    """(A, A') with R = R(A, A'), read off the simple roots present."""
    system = group.system
    a_set, a_prime = set(), set(range(system.rank))
    for i, s in enumerate(group.simple_root_indices):
        if (rset.bits >> system.neg(s)) & 1:
            a_set.add(i)
        if (rset.bits >> s) & 1:
            a_prime.discard(i)
    return frozenset(a_set), frozenset(a_prime)


def boip_op(group, direction, rset, sset):
    ra, rb = boip_components_of(group, rset)
    sa, sb = boip_components_of(group, sset)
    if direction == "meet":
        na, nb = ra & sa, rb & sb
    else:
        na, nb = ra | sa, rb | sb
    system = group.system
    lo = boolean_element_poset(group, na)
    hi = boolean_element_poset(group, nb)
    return RootSet(system,
                   (lo.bits & system.neg_mask) | (hi.bits & system.pos_mask))
