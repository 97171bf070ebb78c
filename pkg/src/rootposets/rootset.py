"""Subsets of a root system as bitsets, and the closure machinery on them.

A RootSet is an immutable (system, bits) pair.  Bit i corresponds to root
index i of the owning system, so the positive part, negative part and
negation are single mask operations.  The closure operator, the negative
and positive closure deletions, convexity, and the classification
predicates (symmetric / antisymmetric / closed / semiclosed / poset)
all live here, together with independent oracles used by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .coeff import Coeff
from .errors import ContractViolationError, UnsupportedOperationError

_COEFF_ZERO = Coeff(0)


class RootSet:
    """An immutable subset of the roots of one system."""

    __slots__ = ("system", "bits")

    def __init__(self, system, bits=0):
        self.system = system
        self.bits = bits

    @classmethod
    def from_indices(cls, system, indices):
        bits = 0
        for i in indices:
            if not 0 <= i < system.num_roots:
                raise ContractViolationError(f"root index {i} out of range")
            bits |= 1 << i
        return cls(system, bits)

    @classmethod
    def positive_roots(cls, system):
        return cls(system, system.pos_mask)

    @classmethod
    def negative_roots(cls, system):
        return cls(system, system.neg_mask)

    @classmethod
    def all_roots(cls, system):
        return cls(system, system.full_mask)

    # -- set algebra -------------------------------------------------------

    def _check_same(self, other):
        if self.system.label != other.system.label:
            raise ContractViolationError(
                f"mixed systems {self.system.label} and {other.system.label}")

    def union(self, other):
        self._check_same(other)
        return RootSet(self.system, self.bits | other.bits)

    def intersection(self, other):
        self._check_same(other)
        return RootSet(self.system, self.bits & other.bits)

    def difference(self, other):
        self._check_same(other)
        return RootSet(self.system, self.bits & ~other.bits)

    def negation(self):
        """The set {-a : a in R}."""
        return RootSet(self.system, self.system.negate_bits(self.bits))

    def positive_part(self):
        return RootSet(self.system, self.bits & self.system.pos_mask)

    def negative_part(self):
        return RootSet(self.system, self.bits & self.system.neg_mask)

    def add(self, index):
        return RootSet(self.system, self.bits | (1 << index))

    def remove(self, index):
        return RootSet(self.system, self.bits & ~(1 << index))

    def grade(self):
        """|R^-| - |R^+|, the rank function of the graded weak-order levels."""
        neg = (self.bits & self.system.neg_mask).bit_count()
        return neg - (self.bits & self.system.pos_mask).bit_count()

    def __contains__(self, index):
        return (self.bits >> index) & 1 == 1

    def __iter__(self):
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self):
        return self.bits.bit_count()

    def __eq__(self, other):
        return (isinstance(other, RootSet)
                and self.system.label == other.system.label
                and self.bits == other.bits)

    def __hash__(self):
        return hash((self.system.label, self.bits))

    def __repr__(self):
        return f"RootSet({self.system.label}, {{{format_set_literal(self)}}})"


def split_signs(rset):
    """(R^+, R^-) with R = R^+ | R^-."""
    return rset.positive_part(), rset.negative_part()


@dataclass(frozen=True)
class SubsetClassification:
    symmetric: bool
    antisymmetric: bool
    closed: bool
    semiclosed: bool
    poset: bool


def _closed_bits(system, bits):
    indices = _indices(bits)
    table = system.sum_table
    for a, i in enumerate(indices):
        row = table[i]
        for j in indices[a:]:
            k = row[j]
            if k >= 0 and not (bits >> k) & 1:
                return False
    return True


def _indices(bits):
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def classify(rset):
    """Classification flags of a subset.

    On non-crystallographic systems the closed flag means pairwise-sum
    closedness only; the stronger multiset conditions are not equivalent
    there.
    """
    system, bits = rset.system, rset.bits
    neg_image = system.negate_bits(bits)
    symmetric = neg_image == bits
    antisymmetric = (neg_image & bits) == 0
    closed = _closed_bits(system, bits)
    semiclosed = (_closed_bits(system, bits & system.pos_mask)
                  and _closed_bits(system, bits & system.neg_mask))
    return SubsetClassification(
        symmetric=symmetric,
        antisymmetric=antisymmetric,
        closed=closed,
        semiclosed=semiclosed,
        poset=antisymmetric and closed,
    )


def closure_bits(system, bits):
    """Pairwise-sum fixpoint as raw bits; valid closure for crystallographic."""
    table = system.sum_table
    work = _indices(bits)
    members = list(work)
    while work:
        nxt = []
        for i in work:
            row = table[i]
            for j in members:
                k = row[j]
                if k >= 0 and not (bits >> k) & 1:
                    bits |= 1 << k
                    nxt.append(k)
                    members.append(k)
        work = nxt
    return bits


def closure(rset):
    """Smallest closed superset, cl(R) = NR intersect Phi (crystallographic only)."""
    if not rset.system.crystallographic:
        raise UnsupportedOperationError(
            "closure is only the pairwise fixpoint on crystallographic systems")
    return RootSet(rset.system, closure_bits(rset.system, rset.bits))


def nspan_oracle(rset, slack=1):
    """Independent oracle for NR intersect Phi via bounded lattice reachability.

    Explores the monoid generated by R inside a coordinate box wide
    enough (Steinitz-style reordering bound) that some addition order
    reaching any representable root stays inside.  Tests compare this
    against the pairwise fixpoint, so an insufficient box would surface
    as a mismatch there rather than pass silently.
    """
    system = rset.system
    if not system.crystallographic:
        raise UnsupportedOperationError("oracle requires integer coordinates")
    rank = system.rank
    gens = [system.int_coords[i] for i in rset]
    if not gens:
        return RootSet(system, 0)
    cmax = max(abs(c) for coords in system.int_coords for c in coords)
    bound = cmax * (1 + slack * rank)
    seen = {tuple([0] * rank)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for point in frontier:
            for g in gens:
                q = tuple(p + c for p, c in zip(point, g))
                if q in seen or any(abs(c) > bound for c in q):
                    continue
                seen.add(q)
                nxt.append(q)
        frontier = nxt
    bits = 0
    lookup = system.index_of_int_coords
    for point in seen:
        k = lookup.get(point)
        if k is not None:
            bits |= 1 << k
    return RootSet(system, bits)


# -- closure deletions ------------------------------------------------------
#
# A root a of one sign is deleted when a + v lands in Phi \ R for some
# nonzero v in the N-span of the opposite-sign part of R.  Multiplicities
# matter: in G2, pcd must e.g. subtract a2 twice from a1+2a2 to fall out
# of the set, and with plain one-shot subsets the meet/join formulas of
# the closed level stop returning bounds.

def _deletable_exhaustive(system, bits, alpha, source_indices):
    """Exhaustive sweep of alpha + N(sources), oracle-grade.

    Walks the coefficient lattice itself (not just root-valued sums), so
    it is independent of the chain/filtration theory that justifies the
    fast path.  The sources all share one sign, so every coordinate is
    monotone along the walk; pruning at the coordinate range of the
    roots therefore loses nothing and guarantees termination.
    """
    if not source_indices:
        return False
    ascending = system.is_positive(source_indices[0])
    coords = system.int_coords
    if coords is not None:
        lookup = system.index_of_int_coords
        cmax = max(abs(c) for row in coords for c in row)
        start = coords[alpha]
        gens = [coords[i] for i in source_indices]
        if ascending:
            inside = lambda p: all(c <= cmax for c in p)
        else:
            inside = lambda p: all(c >= -cmax for c in p)
    else:
        lookup = system.index_of_coords
        hmax = max(abs(r.height) for r in system.roots)
        start = system.roots[alpha].coords
        gens = [system.roots[i].coords for i in source_indices]
        if ascending:
            inside = lambda p: sum(p, _COEFF_ZERO) <= hmax
        else:
            inside = lambda p: -hmax <= sum(p, _COEFF_ZERO)

    seen = {start}
    stack = [start]
    while stack:
        point = stack.pop()
        for g in gens:
            q = tuple(a + b for a, b in zip(point, g))
            if q in seen or not inside(q):
                continue
            k = lookup.get(q)
            if k is not None and not (bits >> k) & 1:
                return True
            seen.add(q)
            stack.append(q)
    return False


def _deletable_fast(system, bits, alpha, source_indices):
    """Chain search: reach Phi \\ R from alpha by adding source roots,
    every partial sum again a root.

    Complete for semiclosed crystallographic sets: a witness combination
    can be taken with no vanishing subsum, and then admits a filtration
    starting at alpha whose partial sums are all roots.
    """
    table = system.sum_table
    seen = 1 << alpha
    stack = [alpha]
    while stack:
        gamma = stack.pop()
        row = table[gamma]
        for beta in source_indices:
            k = row[beta]
            if k < 0:
                continue
            if not (bits >> k) & 1:
                return True
            if not (seen >> k) & 1:
                seen |= 1 << k
                stack.append(k)
    return False


def closure_deletion(rset, side, method="auto"):
    """ncd (side='negative') or pcd (side='positive') of a subset.

    The fast path requires a semiclosed crystallographic input; the
    exhaustive path accepts anything.  method='auto' picks fast when its
    preconditions hold.
    """
    if side not in ("negative", "positive"):
        raise ContractViolationError("side must be 'negative' or 'positive'")
    system, bits = rset.system, rset.bits
    if side == "negative":
        victims = _indices(bits & system.neg_mask)
        sources = _indices(bits & system.pos_mask)
    else:
        victims = _indices(bits & system.pos_mask)
        sources = _indices(bits & system.neg_mask)
    if method == "auto":
        ok_fast = system.crystallographic and classify(rset).semiclosed
        method = "fast" if ok_fast else "exhaustive"
    elif method == "fast":
        if not system.crystallographic:
            raise ContractViolationError("fast path requires a crystallographic system")
    test = _deletable_fast if method == "fast" else _deletable_exhaustive
    out = bits
    for alpha in victims:
        if test(system, bits, alpha, sources):
            out &= ~(1 << alpha)
    return RootSet(system, out)


# -- convexity ---------------------------------------------------------------

def is_convex(rset):
    """Is R the trace on Phi of a convex cone, i.e. Phi meet cone(R) = R?"""
    system = rset.system
    if system.rank > 4:
        raise ContractViolationError("convexity decision is limited to rank <= 4")
    gens = [system.roots[i].coords for i in rset]
    if not gens:
        return True
    outside = [i for i in range(system.num_roots) if i not in rset]
    for k in outside:
        target = system.roots[k].coords
        if linalg.in_rational_cone(gens, target, system.rank):
            return False
    return True


# -- poset extensions --------------------------------------------------------

def linear_extensions(rset, group):
    """All group elements w with R contained in R(w) = w(Phi^+).

    Nonempty for every poset: maximal extensions of a poset are exactly
    the element posets.
    """
    bits = rset.bits
    return [w for w in group.elements if bits & ~w.poset_bits == 0]


# -- textual set literals ------------------------------------------------

def format_set_literal(rset):
    """Comma-separated signed coordinate vectors, e.g. ``+[1,1],-[0,1]``."""
    system = rset.system
    parts = []
    for i in sorted(rset):
        pos = system.is_positive(i)
        j = i if pos else system.neg(i)
        coords = system.roots[j].coords
        body = ",".join(str(c) for c in coords)
        parts.append(f"{'+' if pos else '-'}[{body}]")
    return ",".join(parts)


def parse_set_literal(system, text):
    """Inverse of format_set_literal; integer coordinates only."""
    text = text.strip()
    if not text:
        return RootSet(system, 0)
    bits = 0
    pos = 0
    while pos < len(text):
        sign = text[pos]
        if sign not in "+-":
            raise ContractViolationError(f"expected sign at {text[pos:]!r}")
        open_b = text.index("[", pos)
        close_b = text.index("]", open_b)
        coords = tuple(Coeff(int(t)) for t in text[open_b + 1:close_b].split(","))
        if len(coords) != system.rank:
            raise ContractViolationError(
                f"coordinate vector of length {len(coords)} for rank {system.rank}")
        idx = system.index_of_coords.get(coords)
        if idx is None:
            raise ContractViolationError(f"{text[pos:close_b + 1]} is not a root")
        if sign == "-":
            idx = system.neg(idx)
        bits |= 1 << idx
        pos = close_b + 1
        if pos < len(text):
            if text[pos] != ",":
                raise ContractViolationError(f"expected ',' at {text[pos:]!r}")
            pos += 1
    return RootSet(system, bits)
