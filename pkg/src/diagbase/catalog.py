"""Simple-group catalog: materialized groups T with full Aut(T) tables.

A catalog record supplies generators of T, images of those generators under
outer automorphism representatives, two distinguished generating pairs, and
the minimal index of a proper subgroup.  Everything else is computed and
verified here: the element list and multiplication table of T, the full
automorphism group as index bijections of T, inner/outer coset labels, and
the catalog invariants (simplicity, generation, the |Out|^3 < |T| bound,
prime divisors, minimal-index consistency).

Automorphisms are stored as rows over the element index of T, so applying
one is a single array lookup.  Composition is left-to-right throughout:
``compose(a, b)[x] = b[a[x]]``, under which ``phi_s . phi_t = phi_{s t}``
for the conjugation maps ``phi_t : x -> t^-1 x t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import factorial

import numpy as np

from .errors import NotInnerError, ValidationError
from .perm import GroupTable, Perm

ELEMENT_BUDGET = 2520  # largest |T| the catalog materializes


# ---------------------------------------------------------------------------
# catalog file parsing

_FIELD_RE = re.compile(r"^\s*([a-z_]+)\s*:\s*(.*?)\s*$")

_REQUIRED_FIELDS = (
    "natural_degree", "generators", "gen_pair_distinct_orders",
    "involution_pair", "min_index",
)


@dataclass
class CatalogRecord:
    """Parsed (unvalidated) catalog entry."""

    name: str
    natural_degree: int
    generators: list
    aut_generators: list        # list of (image_of_gen1, image_of_gen2)
    gen_pair_distinct_orders: tuple
    involution_pair: tuple
    min_index: int
    sources: list = field(default_factory=list)


def _parse_perm_pair(value, degree, name, fieldname, lineno):
    parts = value.split("|")
    if len(parts) != 2:
        raise ValidationError("expected two cycle expressions separated by '|'",
                              spec=name, field=fieldname, line=lineno)
    try:
        return tuple(Perm.parse(p, degree) for p in parts)
    except ValueError as exc:
        raise ValidationError(str(exc), spec=name, field=fieldname,
                              line=lineno) from None


def parse_catalog(text: str):
    """Parse the catalog grammar; raises ValidationError with line context."""
    records = []
    current = None
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("group "):
            if current is not None:
                raise ValidationError("nested group block", line=lineno)
            current = stripped.split(None, 1)[1]
            fields = {"aut_generator": [], "source": []}
            continue
        if stripped == "end":
            if current is None:
                raise ValidationError("'end' outside a group block", line=lineno)
            records.append(_finish_record(current, fields))
            current = None
            continue
        if current is None:
            raise ValidationError(f"unexpected line {stripped!r}", line=lineno)
        m = _FIELD_RE.match(line)
        if not m:
            raise ValidationError(f"unparsable line {stripped!r}",
                                  spec=current, line=lineno)
        key, value = m.group(1), m.group(2)
        if key in ("aut_generator", "source"):
            fields[key].append((value, lineno))
        elif key in fields:
            raise ValidationError("duplicate field", spec=current, field=key,
                                  line=lineno)
        else:
            fields[key] = (value, lineno)
    if current is not None:
        raise ValidationError(f"group {current!r} not closed with 'end'")
    return records


def _finish_record(name, fields):
    for req in _REQUIRED_FIELDS:
        if req not in fields:
            raise ValidationError("missing required field", spec=name, field=req)
    if not fields["aut_generator"]:
        raise ValidationError("at least one aut_generator required",
                              spec=name, field="aut_generator")

    def intval(key):
        value, lineno = fields[key]
        try:
            return int(value)
        except ValueError:
            raise ValidationError("expected an integer", spec=name, field=key,
                                  line=lineno) from None

    degree = intval("natural_degree")
    if degree < 1:
        raise ValidationError("degree must be positive", spec=name,
                              field="natural_degree")

    def pair(key):
        value, lineno = fields[key]
        return _parse_perm_pair(value, degree, name, key, lineno)

    return CatalogRecord(
        name=name,
        natural_degree=degree,
        generators=list(pair("generators")),
        aut_generators=[_parse_perm_pair(v, degree, name, "aut_generator", ln)
                        for v, ln in fields["aut_generator"]],
        gen_pair_distinct_orders=pair("gen_pair_distinct_orders"),
        involution_pair=pair("involution_pair"),
        min_index=intval("min_index"),
        sources=[v for v, _ in fields["source"]],
    )


# ---------------------------------------------------------------------------
# materialized group with Aut table


def _rows_to_ids(table_rows, query_rows):
    """Map each query row to its index in table_rows (rows must all occur)."""
    n, width = table_rows.shape
    dt = np.dtype((np.void, table_rows.dtype.itemsize * width))
    tv = np.ascontiguousarray(table_rows).view(dt).ravel()
    qv = np.ascontiguousarray(query_rows.reshape(-1, width)).view(dt).ravel()
    order = np.argsort(tv)
    pos = np.searchsorted(tv[order], qv)
    ids = order[np.clip(pos, 0, n - 1)]
    if not np.array_equal(tv[ids], qv):
        raise ValidationError("row lookup failed: result left the group")
    return ids.astype(np.int32).reshape(query_rows.shape[:-1])


def _closure_with_derivations(gens, budget):
    """BFS closure recording, per element, (parent index, generator index)."""
    ident = Perm.identity(gens[0].degree)
    elements = [ident]
    index = {ident._key: 0}
    deriv = [(-1, -1)]
    head = 0
    while head < len(elements):
        e = elements[head]
        for gi, g in enumerate(gens):
            f = e * g
            if f._key not in index:
                if len(elements) >= budget:
                    raise ValidationError(
                        f"closure exceeded element budget {budget}")
                index[f._key] = len(elements)
                elements.append(f)
                deriv.append((head, gi))
        head += 1
    return elements, index, deriv


class AutTable:
    """Aut(T) as bijections of the element index of T."""

    def __init__(self, group: "SimpleGroup"):
        self.T = group
        self._build()

    def _build(self):
        T = self.T
        n = T.order
        mul, inv = T.mul, T.inv
        # inner automorphisms: phi_t[x] = t^-1 x t, one row per t
        left = mul[inv]                       # left[t, x] = t^-1 * x
        inn = mul[left, np.arange(n, dtype=np.int32)[:, None]]
        rows = [np.ascontiguousarray(r, dtype=np.int32) for r in inn]
        index = {r.tobytes(): t for t, r in enumerate(rows)}
        if len(index) != n:
            raise ValidationError("inner automorphisms not distinct; "
                                  "center is nontrivial", spec=T.name)

        outer_rows = [self._resolve_aut_images(images)
                      for images in T.record.aut_generators]
        gen_rows = [rows[T.gen_ids[0]], rows[T.gen_ids[1]], *outer_rows]
        frontier = []
        for r in outer_rows:
            key = r.tobytes()
            if key not in index:
                index[key] = len(rows)
                rows.append(r)
                frontier.append(r)
        while frontier:
            new = []
            for a in frontier:
                for b in gen_rows:
                    c = np.ascontiguousarray(b[a])
                    key = c.tobytes()
                    if key not in index:
                        index[key] = len(rows)
                        rows.append(c)
                        new.append(c)
            frontier = new

        self.rows = np.stack(rows)
        self.index = index
        self.n_aut = len(rows)
        if self.n_aut % n:
            raise ValidationError(
                f"|Aut| = {self.n_aut} is not a multiple of |T| = {n}",
                spec=T.name)
        self.out_order = self.n_aut // n
        # t -> row of phi_t; rows were seeded with Inn in element order
        self.inn_row_of = np.arange(n, dtype=np.int32)
        self.conjugator_of_row = np.full(self.n_aut, -1, dtype=np.int32)
        self.conjugator_of_row[:n] = np.arange(n, dtype=np.int32)
        self.identity_row = 0  # phi of the identity element
        self._assign_labels()
        self._order_of_row = None
        self._group = None
        self._comp = None

    def _resolve_aut_images(self, images):
        """Bijection of T induced by generator images, via derivation words."""
        T = self.T
        img_ids = []
        for im in images:
            if im._key not in T.table.index:
                raise ValidationError(
                    "aut_generator image is not an element of the group",
                    spec=T.name, field="aut_generator")
            img_ids.append(T.table.index[im._key])
        f = np.zeros(T.order, dtype=np.int32)
        for i, (parent, gi) in enumerate(T.deriv):
            if parent >= 0:
                f[i] = T.mul[f[parent], img_ids[gi]]
        if len(np.unique(f)) != T.order:
            raise ValidationError(
                "aut_generator images do not induce a bijection",
                spec=T.name, field="aut_generator")
        for g, fg in zip(T.gen_ids, img_ids):
            if not np.array_equal(f[T.mul[:, g]], T.mul[f, fg]):
                raise ValidationError(
                    "aut_generator images do not normalize the group "
                    "structure (homomorphism law fails)",
                    spec=T.name, field="aut_generator")
        return np.ascontiguousarray(f)

    def _assign_labels(self):
        n = self.T.order
        labels = np.full(self.n_aut, -1, dtype=np.int32)
        labels[:n] = 0
        reps = [0]
        for r in range(n, self.n_aut):
            row = self.rows[r]
            rinv = np.empty(n, dtype=np.int32)
            rinv[row] = np.arange(n, dtype=np.int32)
            for lab, rep in enumerate(reps):
                # row . rep^-1 inner  <=>  same Inn-coset
                probe = rinv[self.rows[rep]]
                if probe.tobytes() in self.index and \
                        self.index[probe.tobytes()] < n:
                    labels[r] = lab
                    break
            if labels[r] < 0:
                labels[r] = len(reps)
                reps.append(r)
        self.labels = labels
        self.label_reps = reps
        counts = np.bincount(labels, minlength=len(reps))
        if len(reps) != self.out_order or not np.all(counts == n):
            raise ValidationError(
                "Inn-coset partition is not out_order parts of size |T|",
                spec=self.T.name)
        # multiplication table of the (small) outer label group
        m = len(reps)
        lm = np.zeros((m, m), dtype=np.int32)
        for a in range(m):
            for b in range(m):
                comp = self.rows[reps[b]][self.rows[reps[a]]]
                lm[a, b] = labels[self.index[comp.tobytes()]]
        self.label_mul = lm
        self.label_inv = np.array([int(np.where(lm[a] == 0)[0][0])
                                   for a in range(m)], dtype=np.int32)

    # -- queries -------------------------------------------------------------

    def inn_of(self, t: int) -> int:
        """Row index of phi_t."""
        return int(self.inn_row_of[t])

    def row_of(self, bijection) -> int:
        arr = np.ascontiguousarray(np.asarray(bijection, dtype=np.int32))
        key = arr.tobytes()
        if key not in self.index:
            raise ValidationError("bijection is not an automorphism in the table")
        return self.index[key]

    def recover_conjugator(self, a) -> int:
        """The unique t with a = phi_t; NotInnerError if a is outer."""
        r = a if isinstance(a, (int, np.integer)) else self.row_of(a)
        t = int(self.conjugator_of_row[r])
        if t < 0:
            raise NotInnerError("automorphism is not inner")
        return t

    def same_out_coset(self, a, b) -> bool:
        ra = a if isinstance(a, (int, np.integer)) else self.row_of(a)
        rb = b if isinstance(b, (int, np.integer)) else self.row_of(b)
        return int(self.labels[ra]) == int(self.labels[rb])

    def compose_rows(self, a: int, b: int) -> int:
        """Row id of (apply a, then b)."""
        if self._comp is not None:
            return int(self._comp[a, b])
        c = self.rows[b][self.rows[a]]
        return self.index[np.ascontiguousarray(c).tobytes()]

    def invert_row(self, a: int) -> int:
        row = self.rows[a]
        rinv = np.empty(len(row), dtype=np.int32)
        rinv[row] = np.arange(len(row), dtype=np.int32)
        return self.index[rinv.tobytes()]

    def composition_table(self) -> np.ndarray:
        """Full n_aut x n_aut composition table (built lazily)."""
        if self._comp is None:
            comp = np.empty((self.n_aut, self.n_aut), dtype=np.int32)
            for a in range(self.n_aut):
                composed = self.rows[:, self.rows[a]]  # [b] = apply a then b
                comp[a] = _rows_to_ids(self.rows, composed)
            self._comp = comp
        return self._comp

    def order_of_row(self, a: int) -> int:
        if self._order_of_row is None:
            self._order_of_row = np.zeros(self.n_aut, dtype=np.int64)
        cached = int(self._order_of_row[a])
        if cached:
            return cached
        ident = self.rows[self.identity_row]
        r = self.rows[a]
        cur = r.copy()
        n = 1
        while not np.array_equal(cur, ident):
            cur = r[cur]
            n += 1
        self._order_of_row[a] = n
        return n

    def rows_with_labels(self, labels) -> np.ndarray:
        labels = set(int(v) for v in labels)
        return np.array([r for r in range(self.n_aut)
                         if int(self.labels[r]) in labels], dtype=np.int32)

    def centralizer_sizes(self, a: int):
        """(|C_Aut(alpha)|, |C_Inn(alpha)|) for the row a."""
        row = self.rows[a]
        lhs = self.rows[:, row]          # compose(a, r) for every r
        rhs = row[self.rows]             # compose(r, a)
        eq = np.all(lhs == rhs, axis=1)
        return int(eq.sum()), int(eq[:self.T.order].sum())

    def group_table(self) -> GroupTable:
        """Aut(T) wrapped as a GroupTable on |T| points."""
        if self._group is None:
            elements = [Perm(r) for r in self.rows]
            gens = [Perm(self.rows[self.label_reps[lab]])
                    for lab in range(self.out_order) if lab] or []
            gens = [elements[self.inn_of(g)] for g in self.T.gen_ids] + gens
            self._group = GroupTable.from_elements(elements, gens)
        return self._group

    def inn_group_table(self) -> GroupTable:
        """Inn(T) as a subgroup of the Aut table (same |T|-point domain)."""
        full = self.group_table()
        elements = full.elements[:self.T.order]
        gens = [full.elements[self.inn_of(g)] for g in self.T.gen_ids]
        return GroupTable.from_elements(elements, gens)


class SimpleGroup:
    """A catalog group T, fully materialized."""

    def __init__(self, record: CatalogRecord, validate: bool = True):
        self.record = record
        self.name = record.name
        self.natural_degree = record.natural_degree
        self.min_index = record.min_index
        gens = record.generators
        elements, index, deriv = _closure_with_derivations(
            gens, ELEMENT_BUDGET)
        self.table = GroupTable.from_elements(elements, gens)
        self.deriv = deriv
        self.order = len(elements)
        self.gen_ids = [self.table.position(g) for g in gens]
        self._build_tables()
        self.aut = AutTable(self)
        self.out_order = self.aut.out_order
        self.min_index_status = "literature"
        if validate:
            self.validate()

    def _build_tables(self):
        E = self.table.arrays()
        n = self.order
        # mul[i, j] = index of (apply element i, then element j)
        composed = E[:, E]                      # [j, i] = e_j[e_i] = e_i * e_j
        self.mul = np.ascontiguousarray(_rows_to_ids(E, composed).T)
        self.inv = np.array(
            [int(np.where(self.mul[i] == 0)[0][0]) for i in range(n)],
            dtype=np.int32)
        self.order_of = np.array([e.order() for e in self.table.elements],
                                 dtype=np.int64)

    # -- validated invariants -------------------------------------------------

    def validate(self):
        self._check_simplicity()
        self._check_pairs()
        self._check_out_bound(self.order, self.out_order, self.name)
        self._check_prime_divisors()
        self._check_min_index()

    def _check_simplicity(self):
        if self.order < 60:
            raise ValidationError("group too small to be non-abelian simple",
                                  spec=self.name)
        part = self.table.conjugacy_classes()
        for rep in part.reps:
            if rep == 0:
                continue
            cls_elems = [self.table.elements[i]
                         for i in np.where(part.class_of ==
                                           part.class_of[rep])[0]]
            closure = GroupTable.generate(cls_elems, budget=self.order + 1)
            if closure.order != self.order:
                raise ValidationError(
                    "normal closure of a nonidentity element is proper; "
                    "group is not simple", spec=self.name)

    def _check_pairs(self):
        x, y = self.record.gen_pair_distinct_orders
        if x.order() == y.order():
            raise ValidationError("gen_pair_distinct_orders have equal orders",
                                  spec=self.name,
                                  field="gen_pair_distinct_orders")
        if GroupTable.generate([x, y], budget=self.order + 1).order != self.order:
            raise ValidationError("gen_pair_distinct_orders do not generate",
                                  spec=self.name,
                                  field="gen_pair_distinct_orders")
        x, y = self.record.involution_pair
        if y.order() != 2:
            raise ValidationError("second element of involution_pair is not "
                                  "an involution", spec=self.name,
                                  field="involution_pair")
        if GroupTable.generate([x, y], budget=self.order + 1).order != self.order:
            raise ValidationError("involution_pair does not generate",
                                  spec=self.name, field="involution_pair")

    @staticmethod
    def _check_out_bound(order, out_order, name):
        if out_order ** 3 >= order:
            raise ValidationError(
                f"|Out|^3 = {out_order ** 3} is not < |T| = {order}",
                spec=name)

    def _check_prime_divisors(self):
        n, primes, d = self.order, set(), 2
        while d * d <= n:
            if n % d == 0:
                primes.add(d)
                while n % d == 0:
                    n //= d
            d += 1
        if n > 1:
            primes.add(n)
        if len(primes) < 3:
            raise ValidationError(
                "order is divisible by fewer than 3 distinct primes",
                spec=self.name)

    def _check_min_index(self):
        # index-d subgroup <=> faithful transitive action on d points, so
        # |T| | d! is necessary; d < p ruled out whenever d! fails that test
        p = self.min_index
        lower_ok = all(factorial(d) % self.order for d in range(1, p))
        upper_ok = (self.natural_degree == p and self.table.is_transitive())
        if factorial(p) % self.order:
            raise ValidationError(
                f"min_index {p} impossible: |T| does not divide {p}!",
                spec=self.name, field="min_index")
        if lower_ok and upper_ok:
            self.min_index_status = "verified"
        elif lower_ok:
            self.min_index_status = "lower-verified"
        else:
            self.min_index_status = "literature"

    # -- convenience ----------------------------------------------------------

    def element_ids_of_order(self, order):
        return np.where(self.order_of == order)[0]

    def distinct_order_pair_ids(self):
        x, y = self.record.gen_pair_distinct_orders
        return self.table.position(x), self.table.position(y)

    def involution_pair_ids(self):
        x, y = self.record.involution_pair
        return self.table.position(x), self.table.position(y)

    def third_order_element(self):
        """Smallest-index nontrivial element whose order differs from both
        distinct-order pair members."""
        xi, yi = self.distinct_order_pair_ids()
        ox, oy = int(self.order_of[xi]), int(self.order_of[yi])
        for t in range(1, self.order):
            if int(self.order_of[t]) not in (1, ox, oy):
                return t
        raise ValidationError("no element of a third order exists",
                              spec=self.name)

    def elements_with_orders_excluding(self, excluded):
        """Ids of nontrivial elements whose orders avoid the excluded set."""
        excluded = set(excluded) | {1}
        return [t for t in range(self.order)
                if int(self.order_of[t]) not in excluded]

    def __repr__(self):
        return f"SimpleGroup({self.name}, order={self.order}, " \
               f"out={self.out_order})"


# ---------------------------------------------------------------------------
# default catalog access


def default_catalog_text() -> str:
    return resources.files("diagbase").joinpath("data/catalog.txt") \
        .read_text(encoding="utf-8")


def load_catalog(source: str | None = None, validate: bool = True):
    """Parse, build, and validate every catalog record."""
    text = source if source is not None else default_catalog_text()
    return [SimpleGroup(rec, validate=validate) for rec in parse_catalog(text)]


@lru_cache(maxsize=None)
def get_group(name: str) -> SimpleGroup:
    """Build (and cache) one catalog group by name."""
    for rec in parse_catalog(default_catalog_text()):
        if rec.name == name:
            return SimpleGroup(rec)
    raise ValidationError(f"no catalog entry named {name!r}")


def catalog_names():
    return [rec.name for rec in parse_catalog(default_catalog_text())]
