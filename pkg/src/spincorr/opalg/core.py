"""Exact noncommutative algebra over momentum and field symbols.

Expressions are formal sums of monomials

    (rational) * i^p * hbar^a c^b m^c e^d mu'^f * word * (spin matrix)

where the word is built from kinetic-momentum symbols pi_1..pi_3 and at
most one electromagnetic field symbol (E or B component, carrying up to
two derivative indices). Products quadratic in the field strength are
unrepresentable: they are dropped on multiplication, which is exactly
the weak-field truncation all verified identities live in.

The spin slot is a 16-element basis rho_a (x) sigma_b of two commuting
Pauli triples: beta = rho_3, the block-off-diagonal vector alpha_i =
rho_1 sigma_i, and the block-diagonal spin vector rho_0 sigma_i. It
commutes with every word symbol.

All coefficients are Fraction; no floating point enters anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping

Units = tuple[int, int, int, int, int]  # powers of (hbar, c, m, e, mu')
ZERO_UNITS: Units = (0, 0, 0, 0, 0)

# word symbols: ('pi', i) with i in 1..3, or (base, i, derivs) with base
# in {'B','E'} and derivs a sorted tuple of direction indices (len <= 2)
PI = "pi"

_EPS = {
    (1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
    (3, 2, 1): -1, (1, 3, 2): -1, (2, 1, 3): -1,
}


def eps(i: int, j: int, k: int) -> int:
    return _EPS.get((i, j, k), 0)


def _pauli_mul(a: int, b: int) -> tuple[int, int, int]:
    """sigma_a sigma_b = sign * i^p * sigma_out, indices 0..3 with 0 = identity."""
    if a == 0:
        return b, 0, 1
    if b == 0:
        return a, 0, 1
    if a == b:
        return 0, 0, 1
    c = 6 - a - b
    return c, 1, eps(a, b, c)


def _build_spin_table() -> list[list[tuple[int, int, int]]]:
    table = []
    for s1 in range(16):
        row = []
        r1, p1 = divmod(s1, 4)
        for s2 in range(16):
            r2, p2 = divmod(s2, 4)
            r, ip_r, sg_r = _pauli_mul(r1, r2)
            p, ip_p, sg_p = _pauli_mul(p1, p2)
            row.append((4 * r + p, ip_r + ip_p, sg_r * sg_p))
        table.append(row)
    return table


SPIN_MUL = _build_spin_table()

SPIN_ID = 0
SPIN_BETA = 12  # rho_3 (x) identity


def spin_sigma(i: int) -> int:
    return i


def spin_alpha(i: int) -> int:
    return 4 + i


def _fold_i(p: int) -> tuple[int, int]:
    """Reduce a power of i to (power in {0,1}, sign)."""
    p %= 4
    return p % 2, (1 if p < 2 else -1)


def is_field(sym: tuple) -> bool:
    return sym[0] != PI


def _is_trace_b(sym: tuple) -> bool:
    return sym[0] == "B" and sym[1] == 3 and 3 in sym[2]


def _trace_b_replacements(sym: tuple) -> tuple:
    """d3(..)B3 = -d1(..)B1 - d2(..)B2 from the solenoidal constraint."""
    rest = list(sym[2])
    rest.remove(3)
    return tuple(("B", c, tuple(sorted(rest + [c]))) for c in (1, 2))


def word_field_count(word: tuple) -> int:
    return sum(1 for sym in word if is_field(sym))


Key = tuple  # (word, spin, units, ipow)


class OpExpr:
    """Immutable formal sum; terms map (word, spin, units, ipow) -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        self.terms = dict(terms) if terms else {}

    def __add__(self, other: "OpExpr") -> "OpExpr":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return OpExpr(out)

    def __sub__(self, other: "OpExpr") -> "OpExpr":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "OpExpr":
        return self.scale(Fraction(-1))

    def scale(self, q: Fraction, units: Units = ZERO_UNITS, ipow: int = 0) -> "OpExpr":
        if not q:
            return OpExpr()
        out = {}
        for (word, spin, u, ip), c in self.terms.items():
            ip2, sg = _fold_i(ip + ipow)
            u2 = tuple(x + y for x, y in zip(u, units))
            out[(word, spin, u2, ip2)] = c * q * sg
        return OpExpr(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, OpExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def map_words(self, fn) -> "OpExpr":
        """Apply word -> Fraction-or-None filter/transform fn(word); drop None."""
        out = {}
        for (word, spin, u, ip), c in self.terms.items():
            w2 = fn(word)
            if w2 is None:
                continue
            k = (w2, spin, u, ip)
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return OpExpr(out)


def expr_sum(exprs: Iterable[OpExpr]) -> OpExpr:
    out = {}
    for e in exprs:
        for k, v in e.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return OpExpr(out)


@dataclass
class Algebra:
    """Rewriting context: commutator rules, truncation bookkeeping, memo tables.

    charged=False turns off the momentum-momentum commutator (pi = p),
    which is the neutral-particle algebra. loose=True suppresses every
    commutator correction, giving the fully commuting (classical-symbol)
    image of an expression: the "equality up to ordering" comparisons
    are defined through it.
    """

    charged: bool = True
    loose: bool = False
    max_derivs: int = 2
    dropped_derivatives: int = 0
    _word_memo: dict = dc_field(default_factory=dict)
    _pi_even_memo: dict = dc_field(default_factory=dict)

    # -- expression constructors -------------------------------------------

    def term(
        self,
        word: tuple = (),
        spin: int = SPIN_ID,
        coeff: Fraction = Fraction(1),
        units: Units = ZERO_UNITS,
        ipow: int = 0,
    ) -> OpExpr:
        ip, sg = _fold_i(ipow)
        return OpExpr({(tuple(word), spin, tuple(units), ip): Fraction(coeff) * sg})

    def one(self) -> OpExpr:
        return self.term()

    def pi(self, i: int) -> OpExpr:
        return self.term(((PI, i),))

    def field(self, base: str, i: int, derivs: tuple = ()) -> OpExpr:
        if base not in ("B", "E"):
            raise ValueError(f"unknown field base {base!r}")
        # canonicalized so solenoidal-redundant B components never leak in
        return self.canonicalize(self.term(((base, i, tuple(sorted(derivs))),)))

    def sigma(self, i: int) -> OpExpr:
        return self.term((), spin=spin_sigma(i))

    def beta(self) -> OpExpr:
        return self.term((), spin=SPIN_BETA)

    def alpha(self, i: int) -> OpExpr:
        return self.term((), spin=spin_alpha(i))

    def pi_vec(self) -> tuple[OpExpr, OpExpr, OpExpr]:
        return self.pi(1), self.pi(2), self.pi(3)

    def field_vec(self, base: str) -> tuple[OpExpr, OpExpr, OpExpr]:
        return self.field(base, 1), self.field(base, 2), self.field(base, 3)

    def pi_squared(self) -> OpExpr:
        return expr_sum(self.multiply(self.pi(i), self.pi(i)) for i in (1, 2, 3))

    def div_e(self) -> OpExpr:
        return expr_sum(self.field("E", i, (i,)) for i in (1, 2, 3))

    # -- canonicalization ---------------------------------------------------

    def _canon_word(self, word: tuple) -> dict:
        """Normal form of a single word.

        Returns {word': (coeff, ipow, units-delta)} with the field symbol
        (if any) leftmost and the momentum tail sorted by component. The
        memo stores the number of derivative truncations incurred so the
        counter stays honest on cache hits.
        """
        cached = self._word_memo.get(word)
        if cached is not None:
            result, drops = cached
            self.dropped_derivatives += drops
            return result
        before = self.dropped_derivatives
        result = self._canon_word_uncached(word)
        self._word_memo[word] = (result, self.dropped_derivatives - before)
        return result

    def _merge(self, acc: dict, word: tuple, coeff: Fraction, ipow: int, units: Units):
        ip, sg = _fold_i(ipow)
        key = (word, ip, units)
        s = acc.get(key, Fraction(0)) + coeff * sg
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)

    def _canon_word_uncached(self, word: tuple) -> dict:
        nf = word_field_count(word)
        if nf > 1:
            return {}
        if nf == 1:
            pos = next(k for k, sym in enumerate(word) if is_field(sym))
            if pos > 0:
                # move the field one slot left: pi_i F = F pi_i - i hbar dF/dx_i
                i = word[pos - 1][1]
                base, comp, derivs = word[pos]
                swapped = word[: pos - 1] + (word[pos], word[pos - 1]) + word[pos + 1 :]
                acc: dict = {}
                for w, (c, ip, u) in self._canon_word(swapped).items():
                    self._merge(acc, w, c, ip, u)
                if not self.loose:
                    if len(derivs) < self.max_derivs:
                        dsym = (base, comp, tuple(sorted(derivs + (i,))))
                        corr = word[: pos - 1] + (dsym,) + word[pos + 1 :]
                        for w, (c, ip, u) in self._canon_word(corr).items():
                            u2 = (u[0] + 1, u[1], u[2], u[3], u[4])
                            self._merge(acc, w, -c, ip + 1, u2)
                    else:
                        self.dropped_derivatives += 1
                return {w: (c, ip, u) for (w, ip, u), c in acc.items()}
            # field at front: momentum tail commutes freely past itself here
            tail = tuple(sorted(word[1:], key=lambda s: s[1]))
            sym = word[0]
            if _is_trace_b(sym):
                # div B = 0 identically: the Jacobi identity of the pi's
                # demands it, and associativity of the rewriting with it.
                # The redundant component d3(..)B3 is eliminated.
                return {
                    (rep,) + tail: (Fraction(-1), 0, ZERO_UNITS)
                    for rep in _trace_b_replacements(sym)
                }
            return {(sym,) + tail: (Fraction(1), 0, ZERO_UNITS)}

        # field-free word: sort; transpositions cost a field term when charged
        for k in range(len(word) - 1):
            i, j = word[k][1], word[k + 1][1]
            if i > j:
                swapped = word[:k] + (word[k + 1], word[k]) + word[k + 2 :]
                acc = {}
                for w, (c, ip, u) in self._canon_word(swapped).items():
                    self._merge(acc, w, c, ip, u)
                if self.charged and not self.loose:
                    # pi_i pi_j = pi_j pi_i + i (hbar e / c) eps_ijk B_k
                    l = 6 - i - j
                    corr = word[:k] + (("B", l, ()),) + word[k + 2 :]
                    sign = eps(i, j, l)
                    for w, (c, ip, u) in self._canon_word(corr).items():
                        u2 = (u[0] + 1, u[1] - 1, u[2], u[3] + 1, u[4])
                        self._merge(acc, w, c * sign, ip + 1, u2)
                return {w: (c, ip, u) for (w, ip, u), c in acc.items()}
        return {word: (Fraction(1), 0, ZERO_UNITS)}

    def canonicalize(self, expr: OpExpr) -> OpExpr:
        out: dict = {}
        for (word, spin, units, ipow), coeff in expr.terms.items():
            for w, (c, ip, du) in self._canon_word(word).items():
                ip2, sg = _fold_i(ipow + ip)
                u2 = tuple(a + b for a, b in zip(units, du))
                key = (w, spin, u2, ip2)
                s = out.get(key, Fraction(0)) + coeff * c * sg
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return OpExpr(out)

    # -- products -----------------------------------------------------------

    def multiply(self, a: OpExpr, b: OpExpr) -> OpExpr:
        out: dict = {}
        for (w1, s1, u1, i1), c1 in a.terms.items():
            f1 = word_field_count(w1)
            for (w2, s2, u2, i2), c2 in b.terms.items():
                if f1 and word_field_count(w2):
                    continue  # quadratic in the field: truncated away
                s3, ip_s, sg_s = SPIN_MUL[s1][s2]
                base_units = tuple(x + y for x, y in zip(u1, u2))
                cc = c1 * c2 * sg_s
                for w, (c, ip, du) in self._canon_word(w1 + w2).items():
                    ip2, sg = _fold_i(i1 + i2 + ip_s + ip)
                    u = tuple(x + y for x, y in zip(base_units, du))
                    key = (w, s3, u, ip2)
                    s = out.get(key, Fraction(0)) + cc * c * sg
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return OpExpr(out)

    def product(self, *factors: OpExpr) -> OpExpr:
        result = self.one()
        for f in factors:
            result = self.multiply(result, f)
        return result

    def pi_even_power(self, l: int) -> OpExpr:
        """(pi^2)^l, memoized."""
        if l not in self._pi_even_memo:
            if l == 0:
                self._pi_even_memo[l] = self.one()
            else:
                self._pi_even_memo[l] = self.multiply(self.pi_even_power(l - 1), self.pi_squared())
        return self._pi_even_memo[l]

    # -- randomized rewriting (confluence oracle) ----------------------------

    def _applicable_moves(self, word: tuple) -> list:
        moves = []
        has_field = word_field_count(word) == 1
        for p in range(len(word) - 1):
            a, b = word[p], word[p + 1]
            if not is_field(a) and is_field(b):
                moves.append((p, "r1"))
            elif not is_field(a) and not is_field(b) and a[1] > b[1]:
                moves.append((p, "swap" if has_field else "r2"))
        return moves

    def normalize_random(self, expr: OpExpr, rng) -> OpExpr:
        """Normal form by randomly ordered single rewrite steps.

        Bypasses the memoized canonicalizer entirely; agreement with
        canonicalize() on random inputs is the confluence check.
        """
        out: dict = {}
        work = [
            (word, spin, units, ipow, coeff)
            for (word, spin, units, ipow), coeff in expr.terms.items()
        ]
        fuel = 200000
        while work:
            fuel -= 1
            if fuel < 0:
                raise RuntimeError("randomized rewriting exceeded its step budget")
            word, spin, units, ipow, coeff = work.pop(rng.randrange(len(work)))
            if word_field_count(word) > 1:
                continue
            moves = self._applicable_moves(word)
            if not moves:
                if word and _is_trace_b(word[0]):
                    for rep in _trace_b_replacements(word[0]):
                        work.append(((rep,) + word[1:], spin, units, ipow, -coeff))
                    continue
                ip, sg = _fold_i(ipow)
                key = (word, spin, units, ip)
                s = out.get(key, Fraction(0)) + coeff * sg
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
                continue
            p, kind = moves[rng.randrange(len(moves))]
            swapped = word[:p] + (word[p + 1], word[p]) + word[p + 2 :]
            work.append((swapped, spin, units, ipow, coeff))
            if kind == "r1" and not self.loose:
                i = word[p][1]
                base, comp, derivs = word[p + 1]
                if len(derivs) < self.max_derivs:
                    dsym = (base, comp, tuple(sorted(derivs + (i,))))
                    u2 = (units[0] + 1,) + units[1:]
                    work.append(
                        (word[:p] + (dsym,) + word[p + 2 :], spin, u2, ipow + 1, -coeff)
                    )
                else:
                    self.dropped_derivatives += 1
            elif kind == "r2" and self.charged and not self.loose:
                i, j = word[p][1], word[p + 1][1]
                l = 6 - i - j
                u2 = (units[0] + 1, units[1] - 1, units[2], units[3] + 1, units[4])
                work.append(
                    (
                        word[:p] + (("B", l, ()),) + word[p + 2 :],
                        spin,
                        u2,
                        ipow + 1,
                        coeff * eps(i, j, l),
                    )
                )
        return OpExpr(out)

    # -- vector helpers -----------------------------------------------------

    def dot(self, a: tuple, b: tuple) -> OpExpr:
        return expr_sum(self.multiply(a[i], b[i]) for i in range(3))

    def cross(self, a: tuple, b: tuple) -> tuple:
        comps = []
        for k in (1, 2, 3):
            parts = []
            for i in (1, 2, 3):
                for j in (1, 2, 3):
                    e = eps(k, i, j)
                    if e:
                        parts.append(self.multiply(a[i - 1], b[j - 1]).scale(Fraction(e)))
            comps.append(expr_sum(parts))
        return tuple(comps)

    def spin_dot(self, vec: tuple) -> OpExpr:
        """sigma . vec with the block-diagonal spin vector."""
        return expr_sum(self.multiply(self.sigma(i), vec[i - 1]) for i in (1, 2, 3))
