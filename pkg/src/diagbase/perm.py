"""Permutation arithmetic and brute-force group machinery.

Permutations are bijections of {0..m-1} stored as image arrays and composed
left-to-right (``p * q`` applies ``p`` first), matching the right-action
convention used everywhere in this package.  External (serialized) cycle
notation is 1-based; the identity prints as ``()``.

A :class:`GroupTable` is a fully enumerated permutation group.  Everything
here is exhaustive by design: closure is breadth-first, conjugacy classes are
conjugation orbits, centralizers are scans, and minimal bases come from
backtracking.  Groups too large to enumerate must never reach this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import factorial, gcd

import numpy as np

from .errors import BudgetExceededError, MembershipError, PreconditionError

DEFAULT_CLOSURE_BUDGET = 10**7

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _is_bijection(arr) -> bool:
    n = len(arr)
    if n == 0:
        return False
    if int(arr.min()) < 0 or int(arr.max()) >= n:
        return False
    return int(np.bincount(arr, minlength=n).max()) == 1


class Perm:
    """A permutation of {0..m-1}; immutable and hashable."""

    __slots__ = ("images", "_key")

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int32)
        if arr.ndim != 1 or not _is_bijection(arr):
            raise ValueError("images must be a bijection of 0..m-1")
        arr.setflags(write=False)
        self.images = arr
        self._key = arr.tobytes()

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(np.arange(degree, dtype=np.int32))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Perm":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                images[a] = b
            if cyc:
                images[cyc[-1]] = cyc[0]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Perm":
        """Parse 1-based cycle notation, e.g. ``(1 2 3)(4 5)`` or ``()``."""
        stripped = text.strip()
        if not re.fullmatch(r"(\([\d\s,]*\)\s*)+", stripped):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            entries = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
            if not entries:
                continue
            if min(entries) < 1 or max(entries) > degree:
                raise ValueError(f"cycle entry out of range 1..{degree}: {text!r}")
            if len(set(entries)) != len(entries):
                raise ValueError(f"repeated point in cycle: {text!r}")
            cycles.append([e - 1 for e in entries])
        return cls.from_cycles(cycles, degree)

    def cycles(self, include_fixed: bool = False):
        """Cycle decomposition as lists of 0-based points."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = int(self.images[start])
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = int(self.images[j])
            if len(cyc) > 1 or include_fixed:
                out.append(cyc)
        return out

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join(
            "(" + " ".join(str(p + 1) for p in cyc) + ")" for cyc in cycs
        )

    def __repr__(self) -> str:
        return f"Perm({self})"

    def __mul__(self, other: "Perm") -> "Perm":
        # apply self first, then other
        return Perm(other.images[self.images])

    def inverse(self) -> "Perm":
        inv = np.empty(self.degree, dtype=np.int32)
        inv[self.images] = np.arange(self.degree, dtype=np.int32)
        return Perm(inv)

    def __pow__(self, n: int) -> "Perm":
        if n < 0:
            return self.inverse() ** (-n)
        result = Perm.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def order(self) -> int:
        return reduce(lambda a, c: a * c // gcd(a, c),
                      (len(c) for c in self.cycles()), 1)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def fixed_points(self):
        return [i for i in range(self.degree) if self.images[i] == i]

    def moved_count(self) -> int:
        return int(np.count_nonzero(self.images != np.arange(self.degree)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)


def element_order(p: Perm) -> int:
    """Least n >= 1 with p^n = identity."""
    return p.order()


@dataclass
class ClassPartition:
    """Conjugation-orbit partition of a GroupTable."""

    reps: list
    class_of: np.ndarray
    sizes: list

    def __len__(self) -> int:
        return len(self.reps)


class GroupTable:
    """A fully enumerated permutation group.

    ``elements[0]`` is always the identity; ``index`` maps an image-array key
    to its position.  Instances are immutable once built and safe to share.
    """

    def __init__(self, elements, generators):
        self.elements = elements
        self.generators = generators
        self.index = {e._key: i for i, e in enumerate(elements)}
        self.degree = elements[0].degree
        self._arrays = None
        self._classes = None

    @classmethod
    def generate(cls, gens, budget: int = DEFAULT_CLOSURE_BUDGET) -> "GroupTable":
        """Breadth-first closure of the generated group."""
        gens = list(gens)
        if not gens:
            raise PreconditionError("need at least one generator")
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise PreconditionError("generators must share a degree")
        ident = Perm.identity(degree)
        elements = [ident]
        index = {ident._key: 0}
        frontier = [ident]
        while frontier:
            new = []
            for e in frontier:
                for g in gens:
                    f = e * g
                    if f._key not in index:
                        if len(elements) >= budget:
                            raise BudgetExceededError(
                                f"group closure exceeded budget {budget}")
                        index[f._key] = len(elements)
                        elements.append(f)
                        new.append(f)
            frontier = new
        return cls(elements, gens)

    @classmethod
    def from_elements(cls, elements, generators=None) -> "GroupTable":
        """Wrap an already-closed element list (identity must be first)."""
        if not elements[0].is_identity():
            elements = sorted(elements, key=lambda e: not e.is_identity())
        return cls(list(elements), list(generators or elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def arrays(self) -> np.ndarray:
        """All elements as one (order, degree) int32 array."""
        if self._arrays is None:
            self._arrays = np.stack([e.images for e in self.elements])
        return self._arrays

    def __contains__(self, p: Perm) -> bool:
        return p._key in self.index

    def __iter__(self):
        return iter(self.elements)

    def position(self, p: Perm) -> int:
        try:
            return self.index[p._key]
        except KeyError:
            raise MembershipError("element not in group table") from None

    def is_subgroup_of(self, other: "GroupTable") -> bool:
        return self.degree == other.degree and all(
            e._key in other.index for e in self.elements)

    # -- conjugacy machinery ------------------------------------------------

    def conjugacy_classes(self) -> ClassPartition:
        """Orbits of the conjugation action, via BFS per unassigned element."""
        if self._classes is not None:
            return self._classes
        n = self.order
        class_of = np.full(n, -1, dtype=np.int64)
        reps, sizes = [], []
        gen_pairs = [(g, g.inverse()) for g in self.generators]
        for start in range(n):
            if class_of[start] >= 0:
                continue
            cid = len(reps)
            reps.append(start)
            class_of[start] = cid
            queue = [self.elements[start]]
            count = 1
            while queue:
                x = queue.pop()
                for g, ginv in gen_pairs:
                    y = ginv * x * g
                    pos = self.index[y._key]
                    if class_of[pos] < 0:
                        class_of[pos] = cid
                        count += 1
                        queue.append(y)
            sizes.append(count)
        self._classes = ClassPartition(reps, class_of, sizes)
        return self._classes

    def centralizer(self, x: Perm) -> "GroupTable":
        """All y in the group with xy = yx."""
        if x._key not in self.index:
            raise MembershipError("centralizer: element not in group")
        members = [y for y in self.elements if (x * y)._key == (y * x)._key]
        return GroupTable.from_elements(members)

    def prime_order_class_count(self) -> int:
        """f_p: number of conjugacy classes of prime-order elements."""
        part = self.conjugacy_classes()
        return sum(1 for r in part.reps if _is_prime(self.elements[r].order()))

    def element_orders(self) -> np.ndarray:
        return np.array([e.order() for e in self.elements], dtype=np.int64)

    # -- actions on points --------------------------------------------------

    def orbits(self):
        """Orbits on {0..degree-1} as sorted lists."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        arr = self.arrays()
        for start in range(self.degree):
            if seen[start]:
                continue
            orbit = {start}
            queue = [start]
            seen[start] = True
            while queue:
                p = queue.pop()
                for q in arr[:, p]:
                    q = int(q)
                    if not seen[q]:
                        seen[q] = True
                        orbit.add(q)
                        queue.append(q)
            out.append(sorted(orbit))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_primitive(self) -> bool:
        """Transitive with no nontrivial block system (Atkinson's test)."""
        if self.degree == 1:
            return True
        if not self.is_transitive():
            return False
        gens = [g.images for g in self.generators]
        for a in range(1, self.degree):
            if _minimal_block_size(gens, self.degree, 0, a) != self.degree:
                return False
        return True

    def contains_alternating(self) -> bool:
        """Whether A_degree <= group (order test; index-2 subgroup is unique)."""
        half = factorial(self.degree) // 2
        return self.order == half or self.order == 2 * half

    def is_symmetric(self) -> bool:
        return self.order == factorial(self.degree)

    def minimal_degree(self) -> int:
        """Fewest points moved by a non-identity element."""
        if self.order == 1:
            raise PreconditionError("minimal degree undefined for trivial group")
        return min(e.moved_count() for e in self.elements[1:])

    # -- bases and distinguishing subsets ------------------------------------

    def pointwise_stabilizer_elements(self, points, within=None):
        """Positions of elements fixing every point; scan of the full table."""
        arr = self.arrays()
        pts = list(points)
        pool = range(self.order) if within is None else within
        if not pts:
            return list(pool)
        return [i for i in pool if all(arr[i, p] == p for p in pts)]

    def minimal_base(self):
        """Exact minimal base via iterative-deepening backtracking.

        Candidate points are explored in descending orbit size of the running
        stabilizer, ties lexicographic; at each level only one representative
        per stabilizer orbit is tried (conjugate continuations are isomorphic).
        """
        if self.order == 1:
            return 0, []
        arr = self.arrays()
        all_positions = list(range(self.order))

        def orbit_reps_desc(stab_positions):
            sub = arr[stab_positions]
            seen = np.zeros(self.degree, dtype=bool)
            orbits = []
            for start in range(self.degree):
                if seen[start]:
                    continue
                orbit = np.unique(sub[:, start])
                seen[orbit] = True
                orbits.append((int(orbit.size), start))
            # drop fixed points: they never cut the stabilizer down
            orbits = [(s, p) for s, p in orbits if s > 1]
            orbits.sort(key=lambda t: (-t[0], t[1]))
            return orbits

        def dfs(stab_positions, depth, chosen):
            if len(stab_positions) == 1:
                return list(chosen)
            if depth == 0:
                return None
            for _, p in orbit_reps_desc(stab_positions):
                nxt = [i for i in stab_positions if arr[i, p] == p]
                found = dfs(nxt, depth - 1, chosen + [p])
                if found is not None:
                    return found
            return None

        for size in range(1, self.degree + 1):
            base = dfs(all_positions, size, [])
            if base is not None:
                return len(base), base
        raise PreconditionError("group is not faithful on its domain")

    def setwise_stabilizer_is_trivial(self, subset) -> bool:
        target = frozenset(subset)
        arr = self.arrays()
        idx = np.fromiter(target, dtype=np.int64)
        for i in range(1, self.order):
            if frozenset(int(v) for v in arr[i, idx]) == target:
                return False
        return True

    def distinguishing_subset(self, exhaustive_limit: int = 24,
                              random_tries: int = 10**5, seed: int = 0x5EED):
        """A proper subset with trivial setwise stabilizer and |D| >= |complement|.

        Exhaustive (lexicographic within ascending size, sizes from ceil(k/2))
        for degree <= exhaustive_limit; seeded random sampling beyond.
        Returns (subset or None, exhaustive_flag).
        """
        if not self.is_transitive():
            raise PreconditionError("distinguishing subset needs a transitive group")
        k = self.degree
        lo = (k + 1) // 2
        if k <= exhaustive_limit:
            for size in range(lo, k):
                for combo in combinations(range(k), size):
                    if self.setwise_stabilizer_is_trivial(combo):
                        return frozenset(combo), True
            return None, True
        rng = np.random.default_rng(seed)
        for _ in range(random_tries):
            size = int(rng.integers(lo, k))
            combo = rng.choice(k, size=size, replace=False)
            if self.setwise_stabilizer_is_trivial(combo.tolist()):
                return frozenset(int(v) for v in combo), False
        return None, False


def _minimal_block_size(gen_arrays, degree, a, b) -> int:
    """Size of the minimal block containing {a, b} (union-find congruence)."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[ry] = rx
        return True

    union(a, b)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for g in gen_arrays:
            gx, gy = int(g[x]), int(g[y])
            if union(gx, gy):
                queue.append((gx, gy))
    root = find(a)
    return sum(1 for p in range(degree) if find(p) == root)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def symmetric_table(k: int) -> GroupTable:
    """S_k as an explicit table."""
    gens = [Perm.from_cycles([[0, 1]], k)] if k == 2 else [
        Perm.from_cycles([[0, 1]], k),
        Perm.from_cycles([list(range(k))], k),
    ]
    if k == 1:
        return GroupTable.from_elements([Perm.identity(1)])
    return GroupTable.generate(gens)


def alternating_table(k: int) -> GroupTable:
    """A_k as an explicit table."""
    if k <= 2:
        return GroupTable.from_elements([Perm.identity(max(k, 1))])
    if k == 3:
        gens = [Perm.from_cycles([[0, 1, 2]], 3)]
    else:
        gens = [Perm.from_cycles([[0, 1, 2]], k),
                Perm.from_cycles([list(range(k))], k) if k % 2
                else Perm.from_cycles([list(range(1, k))], k)]
    return GroupTable.generate(gens)


def cyclic_table(k: int) -> GroupTable:
    """C_k generated by a k-cycle."""
    return GroupTable.generate([Perm.from_cycles([list(range(k))], k)])


def dihedral_table(k: int) -> GroupTable:
    """D_k (order 2k) on k points: k-cycle plus a reflection."""
    reflection = Perm([(-i) % k for i in range(k)])
    return GroupTable.generate(
        [Perm.from_cycles([list(range(k))], k), reflection])
