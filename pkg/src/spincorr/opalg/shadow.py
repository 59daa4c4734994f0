"""Exact operator representation for cross-checking symbolic results.

Symbols are instantiated on 4-spinor wavefunctions with polynomial
components over the Gaussian rationals: pi_i acts as -i hbar d_i - (e/c) A_i
with a cubic vector potential, field symbols multiply by quadratic
polynomial jets, and the spin slot becomes an exact 4x4 Kronecker matrix.
Every action closes on polynomials, so "the expression annihilates random
states" is decided exactly, with no tolerance.

Quadratic jets have vanishing third derivatives, which makes the algebra's
derivative-order truncation invisible here: identities that canonicalized
through a dropped third-order correction still evaluate to exactly zero.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .core import PI, OpExpr

Gauss = tuple[Fraction, Fraction]
G_ZERO: Gauss = (Fraction(0), Fraction(0))
G_ONE: Gauss = (Fraction(1), Fraction(0))
_I_POW = (
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(-1), Fraction(0)),
    (Fraction(0), Fraction(-1)),
)


def g_add(x: Gauss, y: Gauss) -> Gauss:
    return (x[0] + y[0], x[1] + y[1])


def g_mul(x: Gauss, y: Gauss) -> Gauss:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


# polynomials: {(a, b, c): Gauss} in three position variables


def p_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = g_add(out.get(k, G_ZERO), v)
        if s[0] or s[1]:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def p_scale(p: dict, g: Gauss) -> dict:
    if not (g[0] or g[1]):
        return {}
    return {k: g_mul(v, g) for k, v in p.items()}


def p_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            s = g_add(out.get(k, G_ZERO), g_mul(va, vb))
            if s[0] or s[1]:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def p_diff(p: dict, axis: int) -> dict:
    out = {}
    for k, v in p.items():
        if k[axis]:
            k2 = list(k)
            k2[axis] -= 1
            out[tuple(k2)] = g_mul(v, (Fraction(k[axis]), Fraction(0)))
    return out


def _pauli() -> list[list[list[Gauss]]]:
    f = Fraction
    z, o, i_ = G_ZERO, G_ONE, (f(0), f(1))
    ni = (f(0), f(-1))
    no = (f(-1), f(0))
    return [
        [[o, z], [z, o]],
        [[z, o], [o, z]],
        [[z, ni], [i_, z]],
        [[o, z], [z, no]],
    ]


def spin_matrices() -> list[list[list[Gauss]]]:
    """The 16 Kronecker products rho_a (x) sigma_b, index 4a + b."""
    pauli = _pauli()
    mats = []
    for a in range(4):
        for b in range(4):
            m = [[G_ZERO] * 4 for _ in range(4)]
            for r1 in range(2):
                for c1 in range(2):
                    for r2 in range(2):
                        for c2 in range(2):
                            m[2 * r1 + r2][2 * c1 + c2] = g_mul(
                                pauli[a][r1][c1], pauli[b][r2][c2]
                            )
            mats.append(m)
    return mats


_SPIN_MATS = spin_matrices()


def _rand_frac(rng: Random, lo: int = -3, hi: int = 3) -> Fraction:
    num = rng.randint(lo, hi)
    den = rng.randint(1, 3)
    return Fraction(num, den)


def _rand_poly(rng: Random, degree: int, nterms: int) -> dict:
    out: dict = {}
    for _ in range(nterms):
        k = tuple(rng.randint(0, degree) for _ in range(3))
        if sum(k) > degree:
            continue
        v = _rand_frac(rng)
        if v:
            out[k] = g_add(out.get(k, G_ZERO), (v, Fraction(0)))
    out[(0, 0, 0)] = g_add(out.get((0, 0, 0), G_ZERO), G_ONE)
    return {k: v for k, v in out.items() if v[0] or v[1]}


class ShadowRep:
    """One random instantiation of every symbol as an exact operator."""

    def __init__(self, rng: Random, charged: bool):
        self.charged = charged
        self.hbar = _rand_frac(rng, 1, 4)
        self.c = _rand_frac(rng, 1, 4)
        self.m = _rand_frac(rng, 1, 4)
        self.e = _rand_frac(rng, 1, 4) if charged else Fraction(0)
        self.mu_prime = _rand_frac(rng, 1, 4)
        self.jets: dict = {}
        # B = curl A: keeps the momentum commutator exact in the charged
        # rep and realizes div B = 0, which the symbol algebra imposes
        self.A = [_rand_poly(rng, 3, 5) for _ in range(3)]
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            self.jets[("B", i + 1)] = p_add(
                p_diff(self.A[k], j),
                p_scale(p_diff(self.A[j], k), (Fraction(-1), Fraction(0))),
            )
        for i in (1, 2, 3):
            self.jets[("E", i)] = _rand_poly(rng, 2, 5)

    def unit_value(self, units: tuple) -> Fraction:
        vals = (self.hbar, self.c, self.m, self.e, self.mu_prime)
        out = Fraction(1)
        for v, k in zip(vals, units):
            if k:
                out *= v ** k
        return out

    def field_poly(self, base: str, comp: int, derivs: tuple) -> dict:
        p = self.jets[(base, comp)]
        for ax in derivs:
            p = p_diff(p, ax - 1)
        return p

    def apply_word(self, word: tuple, state: list) -> list:
        """Right-to-left action of a word on a 4-spinor of polynomials."""
        mih = (Fraction(0), -self.hbar)  # -i hbar
        for sym in reversed(word):
            if sym[0] == PI:
                ax = sym[1] - 1
                new = []
                for comp in state:
                    r = p_scale(p_diff(comp, ax), mih)
                    if self.charged and self.e:
                        r = p_add(
                            r,
                            p_scale(
                                p_mul(self.A[ax], comp),
                                (-self.e / self.c, Fraction(0)),
                            ),
                        )
                    new.append(r)
                state = new
            else:
                f = self.field_poly(*sym)
                state = [p_mul(f, comp) for comp in state]
        return state

    def apply(self, expr: OpExpr, state: list) -> list:
        out = [{} for _ in range(4)]
        for (word, spin, units, ipow), coeff in expr.terms.items():
            scalar = g_mul(
                (coeff * self.unit_value(units), Fraction(0)), _I_POW[ipow % 4]
            )
            ws = self.apply_word(word, state)
            mat = _SPIN_MATS[spin]
            for r in range(4):
                acc: dict = {}
                for ccol in range(4):
                    g = mat[r][ccol]
                    if g[0] or g[1]:
                        acc = p_add(acc, p_scale(ws[ccol], g))
                out[r] = p_add(out[r], p_scale(acc, scalar))
        return out


def random_state(rng: Random) -> list:
    return [_rand_poly(rng, 2, 4) for _ in range(4)]


def shadow_is_zero(
    expr: OpExpr, charged: bool, trials: int = 4, seed: int = 0
) -> bool:
    """Exact annihilation of random polynomial states in random reps."""
    for t in range(trials):
        rng = Random(1000003 * seed + t)
        rep = ShadowRep(rng, charged)
        result = rep.apply(expr, random_state(rng))
        if any(comp for comp in result):
            return False
    return True


def shadow_equal(
    a: OpExpr, b: OpExpr, charged: bool, trials: int = 4, seed: int = 0
) -> bool:
    return shadow_is_zero(a - b, charged=charged, trials=trials, seed=seed)
