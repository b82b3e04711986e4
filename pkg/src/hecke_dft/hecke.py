"""Exact arithmetic in the double affine Hecke algebra of type A1 at q = 1.

Elements are stored in the linear basis ``T_w X^k`` (``w`` in the extended
affine Weyl group, ``k`` an integer) with coefficients in the rational
function field Q(tau).  Products are computed by folding right
multiplications by the generators ``T``, ``U``, ``X^{+-1}`` over the letters
of the right factor.
"""
from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple

from sympy import ZZ
from sympy.polys.fields import field

from . import weyl
from .weyl import IDENTITY, S1, U, WeylElement

__all__ = [
    "FIELD",
    "TAU",
    "RationalFunctionTau",
    "AlgebraElement",
    "basis_monomial",
    "one",
    "T",
    "T_inv",
    "Ugen",
    "X",
    "X_inv",
    "mul_right_T",
    "mul_right_U",
    "mul_right_X",
    "mul_left_T",
    "mul_left_U",
    "mul_left_X",
    "multiply",
    "a_coeff",
    "evaluate_coefficient",
    "verify_prop21",
    "prop21_rhs",
]

FIELD, TAU = field("tau", ZZ)
# coefficients are elements of FIELD: gcd-reduced with positive leading denominator
RationalFunctionTau = type(TAU)

_ZERO = FIELD(0)
_ONE = FIELD(1)
_Q = TAU - 1 / TAU  # tau - tau^{-1}

Key = Tuple[WeylElement, int]


class AlgebraElement:
    """Finite sum ``sum c_{w,k} T_w X^k`` with no zero coefficients stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, RationalFunctionTau] = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = FIELD(c)
            if c:
                clean[key] = c
        self.terms: Dict[Key, RationalFunctionTau] = clean

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            other = _as_element(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _as_element(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, _ZERO) + c
        return AlgebraElement(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_element(other))

    def __rsub__(self, other):
        return _as_element(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = FIELD(other)
        return AlgebraElement({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(other, self)
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported; use T_inv / X_inv")
        out = one()
        for _ in range(n):
            out = multiply(out, self)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (w, k), c in sorted(self.terms.items(), key=lambda t: (t[0][0], t[0][1])):
            mono = []
            if w != IDENTITY:
                mono.append(f"T[{repr(w)[12:-1]}]")
            if k:
                mono.append(f"X^{k}")
            parts.append(f"({c})" + ("*" + "*".join(mono) if mono else ""))
        return " + ".join(parts)


def _as_element(x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    return AlgebraElement({(IDENTITY, 0): FIELD(x)})


def _accumulate(out: Dict[Key, RationalFunctionTau], key: Key, c) -> None:
    v = out.get(key, _ZERO) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def basis_monomial(w: WeylElement, k: int = 0) -> AlgebraElement:
    return AlgebraElement({(w, k): _ONE})


def one() -> AlgebraElement:
    return basis_monomial(IDENTITY, 0)


def T() -> AlgebraElement:
    return basis_monomial(S1, 0)


def T_inv() -> AlgebraElement:
    # quadratic relation: T^{-1} = T - (tau - tau^{-1})
    return T() - _Q


def Ugen() -> AlgebraElement:
    return basis_monomial(U, 0)


def X() -> AlgebraElement:
    return basis_monomial(IDENTITY, 1)


def X_inv() -> AlgebraElement:
    return basis_monomial(IDENTITY, -1)


def mul_right_T(e: AlgebraElement) -> AlgebraElement:
    """``e * T`` in normal form.

    Uses ``X^k T = T X^{-k} + sign(k) (tau - tau^{-1}) sum_{j<|k|} X^{|k|-2j}``
    followed by ``T_w T = T_{ws} + [eta(w) = -1] (tau - tau^{-1}) T_w``.
    """
    out: Dict[Key, RationalFunctionTau] = {}
    for (w, k), c in e.terms.items():
        ws = weyl.multiply(w, S1)
        _accumulate(out, (ws, -k), c)
        if weyl.eta(w) == -1:
            _accumulate(out, (w, -k), c * _Q)
        if k:
            sgn = 1 if k > 0 else -1
            ck = c * _Q * sgn
            for j in range(abs(k)):
                _accumulate(out, (w, abs(k) - 2 * j), ck)
    return AlgebraElement(out)


def mul_right_U(e: AlgebraElement) -> AlgebraElement:
    # T_w X^k U = T_w U X^{-k} = T_{wu} X^{-k}
    out: Dict[Key, RationalFunctionTau] = {}
    for (w, k), c in e.terms.items():
        _accumulate(out, (weyl.multiply(w, U), -k), c)
    return AlgebraElement(out)


def mul_right_X(e: AlgebraElement, power: int = 1) -> AlgebraElement:
    if power not in (1, -1):
        raise ValueError(f"power must be +1 or -1, got {power}")
    return AlgebraElement({(w, k + power): c for (w, k), c in e.terms.items()})


def mul_left_T(e: AlgebraElement) -> AlgebraElement:
    # T T_w = T_{sw} + [eta(w^{-1}) = -1] (tau - tau^{-1}) T_w
    out: Dict[Key, RationalFunctionTau] = {}
    for (w, k), c in e.terms.items():
        _accumulate(out, (weyl.multiply(S1, w), k), c)
        if weyl.eta(weyl.inverse(w)) == -1:
            _accumulate(out, (w, k), c * _Q)
    return AlgebraElement(out)


def mul_left_U(e: AlgebraElement) -> AlgebraElement:
    return AlgebraElement({(weyl.multiply(U, w), k): c for (w, k), c in e.terms.items()})


def mul_left_X(e: AlgebraElement, power: int = 1) -> AlgebraElement:
    if power not in (1, -1):
        raise ValueError(f"power must be +1 or -1, got {power}")
    return multiply(basis_monomial(IDENTITY, power), e)


def _letters(w: WeylElement, k: int) -> Iterable[str]:
    # T_w X^k = U^{r} T_{i1} ... T_{ip} X^k with T_0 = U T U
    if w.u_exponent:
        yield "U"
    for i in w.word:
        if i == 1:
            yield "T"
        else:
            yield "U"
            yield "T"
            yield "U"
    step = "X" if k > 0 else "Xi"
    for _ in range(abs(k)):
        yield step


def multiply(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    e1, e2 = _as_element(e1), _as_element(e2)
    total: Dict[Key, RationalFunctionTau] = {}
    for (w, k), c in e2.terms.items():
        acc = e1
        for letter in _letters(w, k):
            if letter == "T":
                acc = mul_right_T(acc)
            elif letter == "U":
                acc = mul_right_U(acc)
            elif letter == "X":
                acc = mul_right_X(acc, 1)
            else:
                acc = mul_right_X(acc, -1)
        for key, v in acc.terms.items():
            _accumulate(total, key, v * c)
    return AlgebraElement(total)


def a_coeff(k: int) -> RationalFunctionTau:
    """``((1 - tau^2)/(1 + tau^2)) (tau^{-k} + (-1)^{k+1} tau^k)``."""
    if k < 0:
        raise ValueError(f"a_coeff requires k >= 0, got {k}")
    sign = 1 if k % 2 == 1 else -1
    return (1 - TAU**2) / (1 + TAU**2) * (TAU ** (-k) + sign * TAU**k)


def evaluate_coefficient(c: RationalFunctionTau, tau: float) -> float:
    num = sum(int(v) * tau ** m[0] for m, v in c.numer.terms())
    den = sum(int(v) * tau ** m[0] for m, v in c.denom.terms())
    return num / den


def prop21_rhs(w: WeylElement, epsilon: int) -> AlgebraElement:
    """Right-hand side of the commutation of ``T_w`` past ``X^epsilon``."""
    r = w.u_exponent
    sgn = (-1) ** (w.word_length + r)
    et = weyl.eta(w)
    lead = multiply(basis_monomial(IDENTITY, epsilon * sgn), basis_monomial(w))
    tail = AlgebraElement(
        {(v, 0): a_coeff(w.word_length - v.word_length) for v in weyl.enumerate_strictly_less(w)}
    )
    return lead + multiply(basis_monomial(IDENTITY, et * sgn), tail) * (epsilon * et)


def verify_prop21(w: WeylElement, epsilon: int) -> bool:
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")
    lhs = multiply(basis_monomial(w), basis_monomial(IDENTITY, epsilon))
    return lhs == prop21_rhs(w, epsilon)
