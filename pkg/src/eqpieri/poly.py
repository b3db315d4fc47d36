"""
Sparse multivariate polynomials with exact integer coefficients.

Variables live in small alphabets: ``t`` (equivariant parameters), ``x`` and
``y`` (the two alphabets of double Schubert polynomials) and ``d`` (the
difference basis d_j = t_{j+1} - t_j used by positivity certificates).

>>> f = (t(3) - t(1)) * (t(6) - t(1))
>>> str(f)
'-t1*t3 - t1*t6 + t1^2 + t3*t6'
>>> str(divided_difference(x(1) ** 2, 1, "x"))
'x1 + x2'
"""

from __future__ import annotations

__all__ = [
    "Variable", "Monomial", "Polynomial", "ALPHABETS", "var", "t", "x", "y",
    "arith", "substitute", "divided_difference", "positivity_certificate",
    "from_certificate", "parse",
]

import re
from typing import Iterable, Mapping, NamedTuple, Optional, Union

ALPHABETS = ("d", "t", "x", "y")


class Variable(NamedTuple):
    alphabet: str
    index: int

    def __str__(self) -> str:
        return f"{self.alphabet}{self.index}"


# sorted tuple of (variable, exponent), exponents positive
Monomial = tuple[tuple[Variable, int], ...]


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_str(m: Monomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


def _canonical_key(m: Monomial):
    # graded, then lex on (alphabet, index, exponent)
    return (-_mono_degree(m), tuple((v.alphabet, v.index, e) for v, e in m))


class Polynomial:
    """Immutable; ``terms`` never stores a zero coefficient."""
    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[Monomial, int], Iterable, None] = None):
        clean: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for mono, c in items:
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        ordered = dict(sorted(clean.items(), key=lambda kv: _canonical_key(kv[0])))
        object.__setattr__(self, "terms", ordered)

    @classmethod
    def constant(cls, c: int) -> Polynomial:
        return cls({(): c})

    @classmethod
    def variable(cls, v: Variable) -> Polynomial:
        return cls({((v, 1),): 1})

    # -- ring structure

    def __add__(self, other) -> Polynomial:
        other = _coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return _coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        other = _coerce(other)
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection

    def variables(self) -> set[Variable]:
        return {v for m in self.terms for v, _ in m}

    def alphabets(self) -> set[str]:
        return {v.alphabet for v in self.variables()}

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = {_mono_degree(m) for m in self.terms}
        if degree is not None:
            return degrees <= {degree}
        return len(degrees) <= 1

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.terms.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not m:
                body = str(mag)
            elif mag == 1:
                body = _mono_str(m)
            else:
                body = f"{mag}*{_mono_str(m)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "monomial": [[v.alphabet, v.index, e] for v, e in m]}
                for m, c in self.terms.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> Polynomial:
        terms = {}
        for item in data:
            mono = tuple(sorted((Variable(a, int(i)), int(e)) for a, i, e in item["monomial"]))
            terms[mono] = terms.get(mono, 0) + int(item["coeff"])
        return cls(terms)


def _coerce(f) -> Polynomial:
    if isinstance(f, Polynomial):
        return f
    if isinstance(f, int):
        return Polynomial.constant(f)
    raise TypeError(f"cannot coerce {type(f).__name__} to Polynomial")


def var(alphabet: str, index: int) -> Polynomial:
    if alphabet not in ALPHABETS:
        raise ValueError(f"unknown alphabet {alphabet!r}")
    if index < 1:
        raise ValueError("variable index must be positive")
    return Polynomial.variable(Variable(alphabet, index))


def t(i: int) -> Polynomial:
    return var("t", i)


def x(i: int) -> Polynomial:
    return var("x", i)


def y(i: int) -> Polynomial:
    return var("y", i)


def arith(f: Polynomial, g: Polynomial, kind: str) -> Polynomial:
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    raise ValueError(f"unknown operation {kind!r}")


def substitute(f: Polynomial, assignment: Mapping[Variable, Polynomial]) -> Polynomial:
    """Simultaneous substitution of polynomials for variables."""
    if not assignment:
        return f
    assignment = {v: _coerce(g) for v, g in assignment.items()}
    powers: dict[tuple[Variable, int], Polynomial] = {}
    result: dict[Monomial, int] = {}
    for m, c in f.terms.items():
        kept: list[tuple[Variable, int]] = []
        factor = Polynomial.constant(c)
        for v, e in m:
            if v in assignment:
                if (v, e) not in powers:
                    powers[v, e] = assignment[v] ** e
                factor = factor * powers[v, e]
            else:
                kept.append((v, e))
        factor = factor * Polynomial({tuple(kept): 1})
        for mm, cc in factor.terms.items():
            result[mm] = result.get(mm, 0) + cc
    return Polynomial(result)


def _swap(f: Polynomial, u: Variable, v: Variable) -> Polynomial:
    swap = {u: v, v: u}
    return Polynomial({tuple(sorted((swap.get(w, w), e) for w, e in m)): c
                       for m, c in f.terms.items()})


def divided_difference(f: Polynomial, i: int, alphabet: str = "x") -> Polynomial:
    """(f - s_i f) / (z_i - z_{i+1}) for the alphabet z, by exact division."""
    if i < 1:
        raise ValueError("divided difference index must be positive")
    zi, zj = Variable(alphabet, i), Variable(alphabet, i + 1)
    numerator = dict((f - _swap(f, zi, zj)).terms)

    # long division by (zi - zj), peeling off the highest power of zi
    quotient: dict[Monomial, int] = {}
    while numerator:
        top = max(dict(m).get(zi, 0) for m in numerator)
        if top == 0:
            break
        for m in [m for m in numerator if dict(m).get(zi, 0) == top]:
            c = numerator.pop(m)
            exps = dict(m)
            exps[zi] -= 1
            if not exps[zi]:
                del exps[zi]
            q = tuple(sorted(exps.items()))
            quotient[q] = quotient.get(q, 0) + c
            # subtract c * q * (zi - zj); the zi part cancels the popped term
            lower = _mono_mul(q, ((zj, 1),))
            numerator[lower] = numerator.get(lower, 0) + c
            if not numerator[lower]:
                del numerator[lower]
    assert not numerator, f"inexact divided difference: remainder {Polynomial(numerator)}"
    return Polynomial(quotient)


def positivity_certificate(f: Polynomial) -> Optional[Polynomial]:
    """
    Rewrite a shift-invariant f in d_j = t_{j+1} - t_j; return the result if
    every coefficient is nonnegative, else None.

    >>> str(positivity_certificate(t(3) - t(1)))
    'd1 + d2'
    >>> positivity_certificate(t(1) - t(2)) is None
    True
    """
    if f.alphabets() - {"t"}:
        raise ValueError("positivity certificates are defined for t-polynomials only")
    if not f:
        return Polynomial()
    top = max((v.index for v in f.variables()), default=1)
    # y1 is fresh since f involves t only
    shift = y(1)
    shifted = substitute(f, {Variable("t", i): t(i) + shift for i in range(1, top + 1)})
    if shifted != f:
        return None
    diff = {Variable("t", 1): Polynomial()}
    for i in range(2, top + 1):
        diff[Variable("t", i)] = sum((var("d", j) for j in range(1, i)), Polynomial())
    cert = substitute(f, diff)
    if any(c < 0 for c in cert.terms.values()):
        return None
    return cert


def from_certificate(cert: Polynomial) -> Polynomial:
    """Substitute d_j := t_{j+1} - t_j."""
    return substitute(cert, {v: t(v.index + 1) - t(v.index) for v in cert.variables()})


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse(text: str) -> Polynomial:
    """Parse the canonical text form, e.g. ``"t3*t6 - t1*t3 + 2*t1^2"``."""
    text = text.strip()
    if text == "0":
        return Polynomial()
    total = Polynomial()
    pos = 0
    for match in _TERM.finditer(text):
        if match.start() != pos:
            raise ValueError(f"malformed polynomial text: {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        term = Polynomial.constant(sign)
        for factor in match.group(2).strip().split("*"):
            factor = factor.strip()
            if factor.isdigit():
                term = term * int(factor)
                continue
            fm = re.fullmatch(r"([dtxy])(\d+)(?:\^(\d+))?", factor)
            if not fm:
                raise ValueError(f"malformed factor {factor!r} in {text!r}")
            term = term * var(fm.group(1), int(fm.group(2))) ** int(fm.group(3) or 1)
        total = total + term
    if pos != len(text):
        raise ValueError(f"malformed polynomial text: {text!r}")
    return total
