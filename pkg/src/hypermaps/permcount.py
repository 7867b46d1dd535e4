"""Combinatorial ground truth for hypermap enumeration.

An a-hypermap on d symbols is a triple (s0, s1, s2) of permutations with
s0*s1*s2 = id, s1 of cycle type (a,...,a), s2 having one labelled cycle of
length b_i per face.  The weighted count fixes s2 in a canonical labelled
form, enumerates s1 directly, and divides by the centralizer order
b_1*...*b_n; orbit-stabilizer makes this equal to the sum of 1/|Aut| over
isomorphism classes.

Everything here is exact and independent of the generating-function and
spectral-curve machinery, so it serves as the oracle for both.
"""

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .arith import HbarPoly, TruncSeries, series_exp, series_log
from .arith.hbar import HB_ZERO
from .arith.rat import Rat, rat, as_int_pair, rat_str

DEFAULT_DEGREE_BOUND = 12
EXTENDED_DEGREE_BOUND = 18  # pruned single-face mode only


class DegreeBoundError(RuntimeError):
    """Requested enumeration exceeds the configured degree bound."""


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


class Perm:
    """A permutation of {1..d}, stored as a 0-based image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a bijection")

    @classmethod
    def identity(cls, d: int) -> "Perm":
        return cls(range(d))

    @classmethod
    def from_cycles(cls, cycles, d: int) -> "Perm":
        """Build from 1-based cycles; symbols absent from cycles are fixed."""
        images = list(range(d))
        seen = set()
        for cyc in cycles:
            for sym in cyc:
                if sym < 1 or sym > d or sym in seen:
                    raise ValueError(f"bad cycle symbol {sym}")
                seen.add(sym)
            for i, sym in enumerate(cyc):
                images[sym - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        """Image of a 1-based symbol."""
        return self.images[x - 1] + 1

    def compose(self, other: "Perm") -> "Perm":
        """self after other: (self*other)(x) = self(other(x))."""
        im = self.images
        return Perm(tuple(im[y] for y in other.images))

    def inverse(self) -> "Perm":
        out = [0] * len(self.images)
        for i, y in enumerate(self.images):
            out[y] = i
        return Perm(out)

    def conjugate(self, g: "Perm") -> "Perm":
        """g * self * g^{-1}."""
        return g.compose(self).compose(g.inverse())

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles on 1-based symbols, each starting at its minimum."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        return len(self.cycles())

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self) -> str:
        body = " ".join(
            "(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1
        )
        return body or "id"


# ---------------------------------------------------------------------------
# hypermap specs and the count table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypermapSpec:
    """Target of one enumeration: hyperedge size a, genus g, face perimeters b."""

    a: int
    g: int
    n: int
    b: tuple[int, ...]

    def __post_init__(self):
        if self.a < 1 or self.g < 0 or self.n < 1:
            raise ValueError("need a >= 1, g >= 0, n >= 1")
        if len(self.b) != self.n or any(x < 1 for x in self.b):
            raise ValueError("b must list n positive perimeters")

    @property
    def degree(self) -> int:
        return sum(self.b)

    def vertex_count(self) -> int | None:
        """v = 2 - 2g - n + (a-1)d/a, or None when no hypermap can exist."""
        d = self.degree
        if d % self.a:
            return None
        v = 2 - 2 * self.g - self.n + (self.a - 1) * (d // self.a)
        return v if v >= 1 else None


class CountTable:
    """Write-once store of counts keyed by spec, with provenance per entry."""

    def __init__(self):
        self._entries: dict[HypermapSpec, tuple] = {}

    def record(self, spec: HypermapSpec, value, provenance: str):
        key = self._canon(spec)
        if key in self._entries:
            old_value, _ = self._entries[key]
            if old_value != value:
                raise ValueError(
                    f"conflicting values for {key}: {old_value} vs {value}"
                )
            return
        self._entries[key] = (value, provenance)

    @staticmethod
    def _canon(spec: HypermapSpec) -> HypermapSpec:
        return HypermapSpec(spec.a, spec.g, spec.n, tuple(sorted(spec.b)))

    def get(self, spec: HypermapSpec):
        return self._entries.get(self._canon(spec))

    def __contains__(self, spec: HypermapSpec) -> bool:
        return self._canon(spec) in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def items_sorted(self):
        return sorted(
            self._entries.items(), key=lambda kv: (kv[0].a, kv[0].g, kv[0].n, kv[0].b)
        )

    def to_json(self) -> str:
        rows = []
        for spec, (value, prov) in self.items_sorted():
            num, den = as_int_pair(value)
            rows.append(
                {
                    "a": spec.a,
                    "g": spec.g,
                    "n": spec.n,
                    "b": list(spec.b),
                    "value_num": num,
                    "value_den": den,
                    "provenance": prov,
                }
            )
        return json.dumps(rows, sort_keys=True)

    def to_csv(self) -> str:
        n_max = max((spec.n for spec in self._entries), default=0)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["a", "g", "n"]
            + [f"b{i + 1}" for i in range(n_max)]
            + ["value_num", "value_den", "provenance"]
        )
        for spec, (value, prov) in self.items_sorted():
            num, den = as_int_pair(value)
            pads = [""] * (n_max - spec.n)
            writer.writerow(
                [spec.a, spec.g, spec.n] + list(spec.b) + pads + [num, den, prov]
            )
        return buf.getvalue()


# ---------------------------------------------------------------------------
# Stirling numbers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def stirling_first(k: int, j: int) -> int:
    """Unsigned Stirling number of the first kind: permutations of S_k with j cycles."""
    if k == 0 and j == 0:
        return 1
    if k <= 0 or j <= 0 or j > k:
        return 0
    return stirling_first(k - 1, j - 1) + (k - 1) * stirling_first(k - 1, j)


# ---------------------------------------------------------------------------
# the constrained enumeration engine
# ---------------------------------------------------------------------------


def _canonical_cycles_images(lengths) -> list[int]:
    """0-based images of the permutation with consecutive labelled cycles."""
    images = []
    start = 0
    for length in lengths:
        for i in range(length - 1):
            images.append(start + i + 1)
        images.append(start)
        start += length
    return images


def _enumerate_matchings(d, a, fixed, v_target):
    """Count s1 of cycle type (a,...,a) against a fixed permutation.

    Counts assignments with <s1, fixed> transitive and, when v_target is not
    None, with s1 o fixed having exactly v_target cycles.  s1 is built one
    a-cycle at a time, each cycle anchored at the smallest unused symbol, so
    every permutation of the right type is produced exactly once.

    Pruning at each completed cycle:
      * the partial product rho = s1 o fixed is a partial injection, so its
        functional graph is closed cycles plus simple paths; the final cycle
        count lies in [closed + (paths ? 1 : 0), closed + paths];
      * a connected component of (s1-so-far, fixed) all of whose symbols
        already have s1 assigned can never merge with the rest.
    """
    sigma1 = [-1] * d
    used = [False] * d
    count = 0

    def rho_cycle_bounds():
        closed = 0
        paths = 0
        has_in = [False] * d
        rho = [-1] * d
        for x in range(d):
            y = fixed[x]
            if sigma1[y] >= 0:
                rho[x] = sigma1[y]
                has_in[sigma1[y]] = True
        seen = [False] * d
        for x in range(d):
            if seen[x] or has_in[x]:
                continue
            # path start (or isolated symbol)
            paths += 1
            y = x
            while y >= 0 and not seen[y]:
                seen[y] = True
                y = rho[y]
        for x in range(d):
            if seen[x]:
                continue
            closed += 1
            y = x
            while not seen[y]:
                seen[y] = True
                y = rho[y]
        return closed, paths

    def components_ok():
        parent = list(range(d))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for x in range(d):
            union(x, fixed[x])
            if sigma1[x] >= 0:
                union(x, sigma1[x])
        comp_open = {}
        comp_size = {}
        for x in range(d):
            r = find(x)
            comp_size[r] = comp_size.get(r, 0) + 1
            if sigma1[x] < 0:
                comp_open[r] = True
        if len(comp_size) == 1:
            return True, True
        for r, size in comp_size.items():
            if size < d and r not in comp_open:
                return False, False
        return True, False

    def prune_ok(done):
        ok, connected = components_ok()
        if not ok:
            return False
        if done and not connected:
            return False
        if v_target is not None:
            closed, paths = rho_cycle_bounds()
            v_max = closed + paths
            v_min = closed + (1 if paths else 0)
            if done:
                return closed == v_target
            if v_target > v_max or v_target < v_min:
                return False
        return True

    def next_unused():
        for x in range(d):
            if not used[x]:
                return x
        return None

    def dfs():
        nonlocal count
        first = next_unused()
        if first is None:
            if prune_ok(done=True):
                count += 1
            return
        used[first] = True
        build(first, first, 1)
        used[first] = False

    def build(first, prev, size):
        nonlocal count
        if size == a:
            sigma1[prev] = first
            if prune_ok(done=False):
                dfs()
            sigma1[prev] = -1
            return
        for x in range(first + 1, d):
            if not used[x]:
                used[x] = True
                sigma1[prev] = x
                build(first, x, size + 1)
                sigma1[prev] = -1
                used[x] = False

    if a == 1:
        # s1 = id; only transitivity and the cycle count of `fixed` matter
        for x in range(d):
            sigma1[x] = x
            used[x] = True
        return 1 if prune_ok(done=True) else 0
    dfs()
    return count


@lru_cache(maxsize=None)
def _count_hypermaps_cached(a: int, g: int, n: int, b: tuple) -> "Rat":
    spec = HypermapSpec(a, g, n, b)
    v_target = spec.vertex_count()
    if v_target is None:
        return rat(0)
    sigma2 = _canonical_cycles_images(spec.b)
    # cycles(s0) = cycles((s1 s2)^{-1}) = cycles(s1 o s2)
    raw = _enumerate_matchings(spec.degree, spec.a, sigma2, v_target)
    weight = 1
    for x in spec.b:
        weight *= x
    return rat(raw, weight)


def count_hypermaps(
    spec: HypermapSpec, degree_bound: int = DEFAULT_DEGREE_BOUND
) -> "Rat":
    """Weighted count of connected labelled a-hypermaps of the given type.

    Fixes the face permutation canonically (labelled cycles of lengths b_i),
    enumerates s1 of type (a,...,a) such that s0 = (s1 s2)^{-1} has the
    vertex count forced by the genus and the triple acts transitively, and
    divides by b_1*...*b_n.  The count is symmetric in b, so results are
    cached with b sorted.
    """
    d = spec.degree
    if d > degree_bound:
        raise DegreeBoundError(f"degree {d} exceeds bound {degree_bound} for {spec}")
    return _count_hypermaps_cached(spec.a, spec.g, spec.n, tuple(sorted(spec.b)))


# ---------------------------------------------------------------------------
# disconnected / connected counts by vertices and hyperedges
# ---------------------------------------------------------------------------


def disconnected_count_closed(a: int, v: int, e: int) -> "Rat":
    """Weighted count of possibly disconnected unlabelled a-hypermaps.

    Choosing the vertex permutation in [ae v] ways and the hyperedge
    permutation in (ae)!/(a^e e!) ways determines the face permutation, so
    the angle-labelled count divided by (ae)! is [ae v]/(a^e e!).
    """
    if v == 0 and e == 0:
        return rat(1)
    if v <= 0 or e <= 0:
        return rat(0)
    return rat(stirling_first(a * e, v), a**e * factorial(e))


def _partitions(n: int, max_part: int | None = None):
    """Partitions of n as weakly decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _centralizer_order(lam) -> int:
    mult: dict[int, int] = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    z = 1
    for length, m in mult.items():
        z *= length**m * factorial(m)
    return z


def disconnected_count_brute(a: int, v: int, e: int) -> "Rat":
    """Same count with the vertex permutation enumerated by cycle type.

    Sums |class of lambda| = (ae)!/z_lambda over partitions lambda of ae with
    v parts; requires ae <= 12 to stay honest about being an enumeration.
    """
    if v == 0 and e == 0:
        return rat(1)
    if v <= 0 or e <= 0:
        return rat(0)
    d = a * e
    if d > 12:
        raise DegreeBoundError(f"ae = {d} exceeds the brute-force bound 12")
    total = 0
    for lam in _partitions(d):
        if len(lam) == v:
            total += factorial(d) // _centralizer_order(lam)
    return rat(total, a**e * factorial(e))


def connected_count_brute(a: int, v: int, e: int) -> "Rat":
    """Weighted count of connected unlabelled a-hypermaps, by direct search.

    For each cycle type lambda of the vertex permutation with v cycles, count
    hyperedge permutations of type (a,...,a) acting transitively against a
    canonical representative (transitivity is conjugation-invariant), weight
    by 1/z_lambda, and sum.
    """
    if v <= 0 or e <= 0:
        return rat(0)
    d = a * e
    if d > 12:
        raise DegreeBoundError(f"ae = {d} exceeds the brute-force bound 12")
    total = rat(0)
    for lam in _partitions(d):
        if len(lam) != v:
            continue
        fixed = _canonical_cycles_images(lam)
        n_transitive = _enumerate_matchings(d, a, fixed, None)
        total += rat(n_transitive, _centralizer_order(lam))
    return total


def disconnected_counts_recursive(a: int, max_e: int) -> dict:
    """All f(v,e) for e <= max_e via the marked-hyperedge removal recursion.

    F(v,e) counts angle-ordered disconnected hypermaps; removing the
    hyperedge carrying the largest angle label with k free angles glued into
    j vertices gives

      F(v,e) = sum_{k=0}^{a} sum_{j=0}^{k} (ae-1)!/(ae-a)! * C(a,k) * [k j]
               * (ae-k-1)!/(ae-a-1)! * F(v-j, e-1),

    with the factorial ratios read as products of consecutive integers (the
    second is empty for k = a and vanishes when it crosses zero).  Returns
    the normalized counts f(v,e) = F(v,e)/(ae)!.
    """

    def ratio(hi: int, lo: int) -> int:
        # product of the integers lo..hi inclusive (empty product = 1)
        out = 1
        for i in range(lo, hi + 1):
            out *= i
        return out

    table: dict[tuple[int, int], int] = {(0, 0): 1}
    for e in range(1, max_e + 1):
        d = a * e
        r1 = ratio(d - 1, d - a + 1)
        for v in range(1, d + 1):
            acc = 0
            for k in range(a + 1):
                r2 = ratio(d - k - 1, d - a)
                if r2 == 0:
                    continue
                for j in range(k + 1):
                    prev = table.get((v - j, e - 1), 0)
                    if prev:
                        acc += r1 * comb(a, k) * stirling_first(k, j) * r2 * prev
            if acc:
                table[(v, e)] = acc
    return {
        (v, e): rat(F, factorial(a * e))
        for (v, e), F in table.items()
        if e >= 1
    }


def disconnected_series(a: int, max_e: int, closed=disconnected_count_closed) -> TruncSeries:
    """1 + sum f(v,e) h^{(a-1)e-v} u^{ae} as a series in u = 1/x over Q[h,1/h]."""
    order = a * max_e
    terms = {0: HbarPoly.const(1)}
    for e in range(1, max_e + 1):
        coeff = HB_ZERO
        for v in range(1, a * e + 1):
            f = closed(a, v, e)
            if f != 0:
                coeff = coeff + HbarPoly.term(f, (a - 1) * e - v)
        if coeff:
            terms[a * e] = coeff
    return TruncSeries.from_terms(terms, order, HB_ZERO)


def connected_counts_from_disconnected(a: int, max_e: int) -> dict:
    """Connected counts f(v,e) read off from log of the disconnected series."""
    logz = series_log(disconnected_series(a, max_e))
    out: dict[tuple[int, int], Rat] = {}
    for e in range(1, max_e + 1):
        coeff = logz[a * e]
        for k, c in coeff.coeffs.items():
            v = (a - 1) * e - k
            out[(v, e)] = c
    return out


def connected_series_exp_roundtrip(a: int, max_e: int) -> bool:
    """exp(log(series)) reproduces the disconnected series exactly."""
    z = disconnected_series(a, max_e)
    return series_exp(series_log(z)).agrees_through(z, a * max_e)


# ---------------------------------------------------------------------------
# one-face counts and closed forms
# ---------------------------------------------------------------------------


def pointed_counts_01(a: int, b_max: int) -> list:
    """N_0..N_{b_max} with N_b = b * M_{0,1}(b): genus-0 one-face hypermaps
    with a marked angle.  Removing the marked hyperedge splits the map into
    an a-tuple of smaller ones, giving the convolution

        N_b = sum_{m_1+...+m_a = b-a} N_{m_1} ... N_{m_a},  N_0 = 1.
    """
    if a < 1:
        raise ValueError("a must be positive")
    if a == 1:
        return [rat(1)] * (b_max + 1)
    n = [rat(0)] * (b_max + 1)
    n[0] = rat(1)
    # powers[k][w] = k-fold convolution of N at weight w, extended one weight
    # at a time so only finalized n-entries are ever read.
    powers = [[rat(0)] * (b_max + 1) for _ in range(a + 1)]
    for k in range(a + 1):
        powers[k][0] = rat(1)
    powers[0] = [rat(1)] + [rat(0)] * b_max
    for m in range(1, b_max + 1):
        if m >= a:
            n[m] = powers[a][m - a]
        powers[1][m] = n[m]
        for k in range(2, a + 1):
            acc = rat(0)
            for i in range(m + 1):
                if powers[k - 1][i] != 0 and n[m - i] != 0:
                    acc += powers[k - 1][i] * n[m - i]
            powers[k][m] = acc
    return n


def closed_form_M01(a: int, b: int) -> "Rat":
    """Closed form for the genus-0 one-face count M_{0,1}(b)."""
    if b < 1:
        raise ValueError("b must be positive")
    if b % a:
        return rat(0)
    return rat(a, a * b + a - b) * comb(b, b // a) / b


def pointed_count(spec_or_b, a: int | None = None, g: int | None = None):
    """Counts with a marked vertex per face: C = b_1*...*b_n * M.

    Accepts a HypermapSpec, or (b-tuple, a, g).  The one exceptional value is
    C_{0,1}(0) = 1, the isolated vertex; any other zero perimeter gives 0.
    """
    if isinstance(spec_or_b, HypermapSpec):
        spec = spec_or_b
        b, a, g = spec.b, spec.a, spec.g
    else:
        b = tuple(spec_or_b)
        if a is None or g is None:
            raise ValueError("need a and g alongside a bare perimeter tuple")
    n = len(b)
    if any(x == 0 for x in b):
        if (g, n) == (0, 1) and b == (0,):
            return rat(1)
        return rat(0)
    m = count_hypermaps(HypermapSpec(a, g, n, b))
    for x in b:
        m *= x
    return m


# ---------------------------------------------------------------------------
# worked fixtures (two explicit 3-hypermaps)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorTriple:
    s0: Perm
    s1: Perm
    s2: Perm

    def validate(self) -> None:
        d = self.s0.degree
        if self.s1.degree != d or self.s2.degree != d:
            raise ValueError("degrees differ")
        prod = self.s0.compose(self.s1).compose(self.s2)
        if prod != Perm.identity(d):
            raise ValueError("s0*s1*s2 is not the identity")

    def hypermap_type(self, a: int) -> tuple[int, int]:
        """(genus, faces) from the vertex-count relation."""
        d = self.s0.degree
        n = self.s2.cycle_count()
        v = self.s0.cycle_count()
        two_g = 2 - n - v + (a - 1) * d // a
        if two_g % 2:
            raise ValueError("inconsistent triple: odd 2g")
        return two_g // 2, n

    def automorphisms(self) -> list[Perm]:
        """Label-preserving simultaneous conjugations fixing the triple.

        Such a conjugation commutes with s2 and fixes each face setwise, so
        it is a product of powers of the individual face cycles; search that
        group directly.
        """
        d = self.s0.degree
        cycles = self.s2.cycles()
        autos = []

        def build(idx: int, current: Perm):
            if idx == len(cycles):
                if current.compose(self.s1) == self.s1.compose(current):
                    if current.compose(self.s0) == self.s0.compose(current):
                        autos.append(current)
                return
            cyc = cycles[idx]
            rot = Perm.from_cycles([cyc], d)
            power = Perm.identity(d)
            for _ in range(len(cyc)):
                build(idx + 1, current.compose(power))
                power = power.compose(rot)

        build(0, Perm.identity(d))
        return autos


def fixture_hypermaps() -> list[tuple[FactorTriple, int]]:
    """The two worked 3-hypermaps on 15 and 18 symbols with their |Aut|."""
    s0_a = Perm.from_cycles(
        [(1, 12), (2, 4), (6, 7), (9, 13, 10)], 15
    )
    s1_a = Perm.from_cycles(
        [(1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12), (13, 14, 15)], 15
    )
    s2_a = Perm.from_cycles(
        [(1, 11, 10, 15, 14, 13, 8, 7, 5, 4), (2, 6, 9, 12, 3)], 15
    )
    s0_b = Perm.from_cycles(
        [(2, 5), (3, 11), (6, 7), (8, 13), (9, 10), (12, 17), (15, 16)], 18
    )
    s1_b = Perm.from_cycles(
        [(1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12), (13, 14, 15), (16, 17, 18)],
        18,
    )
    s2_b = Perm.from_cycles(
        [(1, 3, 10, 8, 15, 18, 17, 11, 2, 4, 6, 9, 12, 16, 14, 13, 7, 5)], 18
    )
    out = []
    for triple, aut in [
        (FactorTriple(s0_a, s1_a, s2_a), 1),
        (FactorTriple(s0_b, s1_b, s2_b), 2),
    ]:
        triple.validate()
        out.append((triple, aut))
    return out


def fixture_involution() -> Perm:
    """The nontrivial automorphism of the second fixture."""
    return Perm.from_cycles(
        [(1, 4), (2, 5), (3, 6), (7, 11), (8, 12), (9, 10), (13, 17), (14, 18), (15, 16)],
        18,
    )
