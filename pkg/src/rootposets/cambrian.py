"""Coxeter elements, sortable elements, Cambrian classes, snakes.

The Cambrian projections are computed by brute-force extremum over the
sortable (resp. antisortable) elements rather than by the inductive
recursion; at desk scale this is cheap and the uniqueness assertions
double as tests of the cited theory.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolationError, InvariantError
from .rootset import _indices
from .weyl import ParabolicCoset, facial_le, format_word


class CoxeterElement:
    """A Coxeter element given by an ordering of the simple reflections."""

    def __init__(self, group, word):
        word = tuple(word)
        if sorted(word) != list(range(group.system.rank)):
            raise ContractViolationError(
                "a Coxeter element uses every simple reflection exactly once")
        self.group = group
        self.word = word
        self.element = group.from_word(word)
        self._sorting_cache = {}
        self._c_order = None
        self._sortable_ids = None
        self._antisortable_ids = None
        self._down_ids = None
        self._up_ids = None

    def inverse(self):
        return CoxeterElement(self.group, tuple(reversed(self.word)))

    def label(self):
        return "".join(f"s{i + 1}" for i in self.word)

    def __repr__(self):
        return f"CoxeterElement({self.label()})"


def coxeter_element(group, spec):
    """Build a Coxeter element from a word spec, or the aliases lin / bip.

    lin is s1 s2 ... sn except in types B/C/F/G where the special vertex
    (the one on the multiple edge, highest index in Bourbaki numbering
    for B/C) goes first; bip multiplies one part of the diagram
    bipartition, then the other.
    """
    n = group.system.rank
    family = group.system.family
    if isinstance(spec, CoxeterElement):
        return spec
    if spec == "lin":
        if family in ("B", "C"):
            return CoxeterElement(group, range(n - 1, -1, -1))
        if family == "D":
            return CoxeterElement(group,
                                  [n - 2, n - 1] + list(range(n - 3, -1, -1)))
        return CoxeterElement(group, range(n))
    if spec == "bip":
        cartan = group.system.cartan
        color = [None] * n
        for start in range(n):
            if color[start] is not None:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if i != j and cartan[i][j] and color[j] is None:
                        color[j] = 1 - color[i]
                        stack.append(j)
        word = [i for i in range(n) if color[i] == 0]
        word += [i for i in range(n) if color[i] == 1]
        return CoxeterElement(group, word)
    if isinstance(spec, str):
        parts = spec.replace(" ", "")
        word = []
        i = 0
        while i < len(parts):
            if parts[i] != "s":
                raise ContractViolationError(f"bad Coxeter word {spec!r}")
            j = i + 1
            while j < len(parts) and parts[j].isdigit():
                j += 1
            word.append(int(parts[i + 1:j]) - 1)
            i = j
        return CoxeterElement(group, word)
    return CoxeterElement(group, spec)


def sorting_word(c, w):
    """(letters, blocks) of the c-sorting word of w.

    Greedy scan of c^infinity taking every letter that shortens w from
    the left; the letters taken during one pass over c form one block.
    """
    got = c._sorting_cache.get(w.id)
    if got is not None:
        return got
    group = c.group
    simples = group.simple_root_indices
    letters = []
    blocks = []
    u = w
    while u.length:
        block = set()
        for i in c.word:
            if (u.inv_bits >> simples[i]) & 1:  # left descent at i
                u = group.mult_gen_left(i, u)
                letters.append(i)
                block.add(i)
        if not block:
            raise InvariantError("sorting scan made no progress")
        blocks.append(frozenset(block))
    out = (letters, blocks)
    c._sorting_cache[w.id] = out
    return out


def is_sortable(c, w, kind="sortable"):
    """Nested-block test for sortable; w*w0 (c^-1)-sortable for antisortable."""
    if kind == "antisortable":
        group = c.group
        return is_sortable(c.inverse(), group.mult(w, group.longest), "sortable")
    if kind != "sortable":
        raise ContractViolationError("kind must be 'sortable' or 'antisortable'")
    _, blocks = sorting_word(c, w)
    return all(blocks[i] >= blocks[i + 1] for i in range(len(blocks) - 1))


def _ensure_projection_tables(c):
    if c._down_ids is not None:
        return
    group = c.group
    sortable = [w.id for w in group.elements if is_sortable(c, w)]
    anti = [w.id for w in group.elements if is_sortable(c, w, "antisortable")]
    c._sortable_ids = sortable
    c._antisortable_ids = anti
    els = group.elements
    down = [None] * len(els)
    up = [None] * len(els)
    for w in els:
        best = None
        for sid in sortable:
            s = els[sid]
            if s.weak_le(w) and (best is None or best.weak_le(s)):
                best = s
        # uniqueness of the maximum below w
        for sid in sortable:
            s = els[sid]
            if s.weak_le(w) and not s.weak_le(best):
                raise InvariantError("no unique maximal sortable element below w")
        down[w.id] = best.id
        best = None
        for aid in anti:
            a = els[aid]
            if w.weak_le(a) and (best is None or a.weak_le(best)):
                best = a
        for aid in anti:
            a = els[aid]
            if w.weak_le(a) and not best.weak_le(a):
                raise InvariantError("no unique minimal antisortable element above w")
        up[w.id] = best.id
    c._down_ids = down
    c._up_ids = up


def cambrian_project(c, w, direction="down"):
    """pi_down (maximal sortable below) or pi_up (minimal antisortable above)."""
    _ensure_projection_tables(c)
    table = c._down_ids if direction == "down" else c._up_ids
    return c.group.elements[table[w.id]]


@dataclass
class CambrianClass:
    bottom: object  # sortable WeylElement
    top: object     # antisortable WeylElement
    members: tuple

    def __repr__(self):
        return f"[{format_word(self.bottom.word())}, {format_word(self.top.word())}]"


def cambrian_classes(c, facial=False, cosets=None):
    """The fibers of the projections, as weak-order intervals partitioning W.

    With facial=True, returns the facial congruence classes over the
    given cosets (all standard parabolic cosets when omitted).
    """
    if facial:
        if cosets is None:
            from .weyl import enumerate_cosets
            cosets = enumerate_cosets(c.group)
        return facial_cambrian_classes(c, cosets)
    _ensure_projection_tables(c)
    group = c.group
    buckets = {}
    for w in group.elements:
        buckets.setdefault(c._down_ids[w.id], []).append(w)
    classes = []
    for bottom_id, members in sorted(buckets.items()):
        bottom = group.elements[bottom_id]
        tops = {c._up_ids[w.id] for w in members}
        if len(tops) != 1:
            raise InvariantError("Cambrian class has inconsistent top")
        top = group.elements[tops.pop()]
        interval = [w for w in group.elements
                    if bottom.weak_le(w) and w.weak_le(top)]
        if {w.id for w in interval} != {w.id for w in members}:
            raise InvariantError("Cambrian class is not a weak order interval")
        classes.append(CambrianClass(bottom=bottom, top=top,
                                     members=tuple(members)))
    total = sum(len(cl.members) for cl in classes)
    if total != len(group.elements):
        raise InvariantError("Cambrian classes do not partition W")
    return classes


def class_of(c, w):
    _ensure_projection_tables(c)
    return c._down_ids[w.id]


def cambrian_le(c, x_class, y_class):
    """X <= Y in the Cambrian lattice via the sortable bottoms."""
    return x_class.bottom.weak_le(y_class.bottom)


# -- the c-order on positive roots and alignment ------------------------------

def c_root_order(c):
    """Total order on positive-root indices from the c-sorting word of w0."""
    if c._c_order is not None:
        return c._c_order
    group = c.group
    system = group.system
    letters, _ = sorting_word(c, group.longest)
    if len(letters) != system.num_positive:
        raise InvariantError("sorting word of w0 has wrong length")
    order = []
    prefix = group.identity
    for q in letters:
        root = prefix.perm[group.simple_root_indices[q]]
        order.append(root)
        prefix = group.mult(prefix, group.generator(q))
    if sorted(order) != list(range(system.num_positive)):
        raise InvariantError("c-order does not enumerate the positive roots")
    c._c_order = order
    return order


def c_position_table(c):
    order = c_root_order(c)
    pos = [0] * len(order)
    for rank_, idx in enumerate(order):
        pos[idx] = rank_
    return pos


def is_c_aligned(c, rset):
    """alpha <_c beta and alpha+beta in S imply alpha in S, for S inside Phi^+."""
    system = c.group.system
    if rset.bits & system.neg_mask:
        raise ContractViolationError("alignment is defined for sets of positive roots")
    pos = c_position_table(c)
    table = system.sum_table
    n = system.num_positive
    bits = rset.bits
    for a in range(n):
        row = table[a]
        for b in range(n):
            if pos[a] < pos[b]:
                k = row[b]
                if 0 <= k < n and (bits >> k) & 1 and not (bits >> a) & 1:
                    return False
    return True


# -- snakes -------------------------------------------------------------------

def _snakes(c, rset, max_len):
    """Yield all c-snakes of R up to max_len, as tuples of root indices.

    Template 1 alternates positive, negative, positive ... with
    |a1| <c |a2| >c |a3| <c ... on the positive versions; template 2 is
    the sign-swapped pattern with the mirrored comparison chain.
    """
    system = c.group.system
    pos = c_position_table(c)
    members = _indices(rset.bits)

    def posval(i):
        j = i if system.is_positive(i) else system.neg(i)
        return pos[j]

    def extend(seq, template):
        yield tuple(seq)
        if len(seq) >= max_len:
            return
        k = len(seq)  # next position (0-based); paper's index k+1
        want_positive = (k % 2 == 0) if template == 1 else (k % 2 == 1)
        prev = seq[-1]
        # comparisons alternate: <c at odd paper-index steps, >c at even
        ascending = (k % 2 == 1) if template == 1 else (k % 2 == 0)
        for nxt in members:
            if system.is_positive(nxt) != want_positive:
                continue
            if ascending:
                if not posval(prev) < posval(nxt):
                    continue
            else:
                if not posval(prev) > posval(nxt):
                    continue
            yield from extend(seq + [nxt], template)

    for template in (1, 2):
        first_positive = template == 1
        for start in members:
            if system.is_positive(start) == first_positive:
                yield from extend([start], template)


def snake_exists(c, rset, alpha, max_len=None, coeff_bound=None):
    """Does root alpha decompose over some c-snake of R?

    A decomposition is alpha = sum_i e_i * l_i * a_i with l_i natural,
    signs e_i strictly alternating along the snake, and a global sign
    flip allowed (the type-A model: a zigzag path traversed either way).
    """
    system = c.group.system
    if (rset.bits >> alpha) & 1:
        return True
    if not system.crystallographic:
        raise ContractViolationError("snake search needs integer coordinates")
    if max_len is None:
        max_len = 2 * system.rank + 2
    if coeff_bound is None:
        coeff_bound = max(abs(x) for row in system.int_coords for x in row)
    target = system.int_coords[alpha]
    rank = system.rank
    zero = tuple([0] * rank)

    for snake in _snakes(c, rset, max_len):
        vecs = []
        for p, idx in enumerate(snake):
            sign = 1 if p % 2 == 0 else -1
            vecs.append(tuple(sign * x for x in system.int_coords[idx]))
        for flip in (1, -1):
            goal = tuple(flip * t for t in target)
            if _bounded_combo(vecs, goal, coeff_bound):
                return True
    return False


def _bounded_combo(vecs, goal, bound):
    """Is goal a sum of l_i * vecs[i] with 0 <= l_i <= bound, exact ints?

    Pruned by per-coordinate reachability intervals of the suffixes.
    """
    m = len(vecs)
    rank = len(goal)
    lo = [[0] * rank for _ in range(m + 1)]
    hi = [[0] * rank for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for d in range(rank):
            x = bound * vecs[i][d]
            lo[i][d] = lo[i + 1][d] + min(0, x)
            hi[i][d] = hi[i + 1][d] + max(0, x)

    def rec(i, remaining):
        for d in range(rank):
            if not lo[i][d] <= remaining[d] <= hi[i][d]:
                return False
        if i == m:
            return True
        v = vecs[i]
        for lam in range(bound + 1):
            nxt = tuple(r - lam * x for r, x in zip(remaining, v))
            if rec(i + 1, nxt):
                return True
        return False

    return rec(0, goal)


def snake_decomposable_roots(c, rset, max_len=None, coeff_bound=None):
    """All roots of Phi admitting a c-snake decomposition in R (bulk form)."""
    system = c.group.system
    if not system.crystallographic:
        raise ContractViolationError("snake search needs integer coordinates")
    if max_len is None:
        max_len = 2 * system.rank + 2
    if coeff_bound is None:
        coeff_bound = max(abs(x) for row in system.int_coords for x in row)
    found = set(_indices(rset.bits))
    todo = [i for i in range(system.num_roots) if i not in found]
    if not todo:
        return found
    for snake in _snakes(c, rset, max_len):
        vecs = []
        for p, idx in enumerate(snake):
            sign = 1 if p % 2 == 0 else -1
            vecs.append(tuple(sign * x for x in system.int_coords[idx]))
        still = []
        for alpha in todo:
            target = system.int_coords[alpha]
            hit = any(
                _bounded_combo(vecs, tuple(f * t for t in target), coeff_bound)
                for f in (1, -1))
            if hit:
                found.add(alpha)
            else:
                still.append(alpha)
        todo = still
        if not todo:
            break
    return found


# -- facial Cambrian classes ---------------------------------------------------

@dataclass
class FacialCambrianClass:
    down: ParabolicCoset
    up: ParabolicCoset
    members: tuple

    def __repr__(self):
        return f"[{self.down!r}, {self.up!r}]"


def facial_cambrian_classes(c, cosets):
    """Partition of the cosets by (x class, x w_{o,I} class); min/max checked."""
    _ensure_projection_tables(c)
    buckets = {}
    for coset in cosets:
        key = (class_of(c, coset.x), class_of(c, coset.w_long))
        buckets.setdefault(key, []).append(coset)
    classes = []
    for key in sorted(buckets):
        members = buckets[key]
        down = up = members[0]
        for m in members[1:]:
            if facial_le(m, down):
                down = m
            if facial_le(up, m):
                up = m
        for m in members:
            if not (facial_le(down, m) and facial_le(m, up)):
                raise InvariantError("facial Cambrian class lacks min/max")
        classes.append(FacialCambrianClass(down=down, up=up,
                                           members=tuple(members)))
    return classes
