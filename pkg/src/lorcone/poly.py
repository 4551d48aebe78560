"""Exact sparse arithmetic for homogeneous multivariate polynomials.

A polynomial is a map from exponent tuples to Fraction coefficients; every
stored monomial has the same total degree and zero coefficients are never
stored, so identity tests (including "is identically zero") are exact.
Spectral work converts to float64 only at the linear-algebra boundary.

Text grammar (parsed by :func:`parse_polynomial`, emitted by
:meth:`Polynomial.to_text`)::

    poly  := [sign] term (sign term)*
    term  := [coeff '*'] var ('^' int)? ('*' var ('^' int)?)*  |  coeff
    var   := 'x' int          (1-based)
    coeff := int | int '/' int

Example: ``3*x1^2*x2 - 1/2*x3^3``.  Whitespace is ignored; inhomogeneous
input is rejected with an error naming the two offending degrees.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponents = tuple[int, ...]


def _as_fraction(value) -> Fraction:
    # Fraction(float) is exact, so float inputs do not silently lose meaning.
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def rational_vector(values) -> tuple[Fraction, ...]:
    return tuple(_as_fraction(v) for v in values)


class Polynomial:
    """Homogeneous polynomial with exact rational coefficients.

    Immutable after construction.  The zero polynomial keeps a nominal
    degree for type consistency; two polynomials are equal iff they have the
    same variable count and identical term maps (the nominal degree of a
    zero polynomial is ignored).
    """

    __slots__ = ("n", "d", "terms", "_cache")

    def __init__(self, n: int, d: int, terms: Mapping[Exponents, Fraction] | None = None):
        if n < 1:
            raise ValueError("variable count must be >= 1")
        if d < 0:
            raise ValueError("degree must be >= 0")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent tuple {exps} does not have length {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if sum(exps) != d:
                raise ValueError(f"monomial {exps} has degree {sum(exps)}, expected {d}")
            coeff = _as_fraction(coeff)
            if coeff != 0:
                clean[exps] = coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int, d: int = 0) -> "Polynomial":
        return Polynomial(n, d, {})

    @staticmethod
    def variable(n: int, index: int) -> "Polynomial":
        """The polynomial x_{index} (0-based index)."""
        exps = [0] * n
        exps[index] = 1
        return Polynomial(n, 1, {tuple(exps): Fraction(1)})

    @staticmethod
    def constant(n: int, value) -> "Polynomial":
        return Polynomial(n, 0, {(0,) * n: _as_fraction(value)})

    @staticmethod
    def from_terms(n: int, terms: Mapping[Exponents, Fraction]) -> "Polynomial":
        degs = {sum(e) for e in terms if terms[e] != 0}
        if len(degs) > 1:
            lo, hi = min(degs), max(degs)
            raise ValueError(f"inhomogeneous terms: degrees {hi} and {lo}")
        d = degs.pop() if degs else 0
        return Polynomial(n, d, terms)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Exponents) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.is_zero and other.is_zero:
            return True
        return self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.d if self.terms else -1, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.to_text()!r}, n={self.n}, d={self.d})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        if self.is_zero:
            return Polynomial(other.n, other.d, other.terms)
        if other.is_zero:
            return Polynomial(self.n, self.d, self.terms)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return Polynomial(self.n, self.d, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def scale(self, factor) -> "Polynomial":
        factor = _as_fraction(factor)
        if factor == 0:
            return Polynomial.zero(self.n, self.d)
        return Polynomial(self.n, self.d, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.n, self.d + other.d, out)

    __rmul__ = __mul__

    def _check_compatible(self, other: "Polynomial"):
        if self.n != other.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
        if not self.is_zero and not other.is_zero and self.d != other.d:
            raise ValueError(f"degree mismatch: {self.d} vs {other.d}")

    # -- calculus ----------------------------------------------------------

    def partial(self, i: int) -> "Polynomial":
        """Partial derivative with respect to x_i (0-based)."""
        if self.d < 1:
            return Polynomial.zero(self.n, 0)
        out: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            lowered = exps[:i] + (e - 1,) + exps[i + 1:]
            out[lowered] = out.get(lowered, Fraction(0)) + coeff * e
        return Polynomial(self.n, self.d - 1, out)

    def directional_derivative(self, a: Sequence) -> "Polynomial":
        """Derivative in direction ``a`` (rational vector), exact."""
        a = rational_vector(a)
        if len(a) != self.n:
            raise ValueError(f"direction has length {len(a)}, expected {self.n}")
        if self.d < 1:
            raise ValueError("directional derivative requires degree >= 1")
        out: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            for i, e in enumerate(exps):
                if e == 0 or a[i] == 0:
                    continue
                lowered = exps[:i] + (e - 1,) + exps[i + 1:]
                out[lowered] = out.get(lowered, Fraction(0)) + coeff * e * a[i]
        return Polynomial(self.n, self.d - 1, out)

    def evaluate_exact(self, point: Sequence) -> Fraction:
        point = rational_vector(point)
        if len(point) != self.n:
            raise ValueError(f"point has length {len(point)}, expected {self.n}")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            value = coeff
            for x, e in zip(point, exps):
                if e:
                    value *= x ** e
            total += value
        return total

    def _float_arrays(self):
        cached = self._cache.get("float_arrays")
        if cached is None:
            exps = sorted(self.terms)
            mat = np.array(exps, dtype=np.int64).reshape(len(exps), self.n)
            coeffs = np.array([float(self.terms[e]) for e in exps], dtype=np.float64)
            cached = (mat, coeffs)
            self._cache["float_arrays"] = cached
        return cached

    def evaluate(self, point) -> float:
        """Float evaluation at one point."""
        if self.is_zero:
            return 0.0
        mat, coeffs = self._float_arrays()
        x = np.asarray(point, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"point has shape {x.shape}, expected ({self.n},)")
        return float(coeffs @ np.prod(np.power(x[None, :], mat), axis=1))

    def evaluate_many(self, points) -> np.ndarray:
        """Float evaluation at each row of ``points`` (m x n)."""
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != self.n:
            raise ValueError(f"points must be (m, {self.n}), got {pts.shape}")
        if self.is_zero:
            return np.zeros(pts.shape[0])
        mat, coeffs = self._float_arrays()
        return np.prod(np.power(pts[:, None, :], mat[None, :, :]), axis=2) @ coeffs

    def gradient_at(self, point) -> np.ndarray:
        x = np.asarray(point, dtype=np.float64)
        out = np.zeros(self.n)
        for exps, coeff in self.terms.items():
            c = float(coeff)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                value = c * e
                for j, ej in enumerate(exps):
                    power = ej - 1 if j == i else ej
                    if power:
                        value *= x[j] ** power
                out[i] += value
        return out

    def hessian_at(self, point) -> np.ndarray:
        """Hessian matrix of the polynomial at ``point`` (float, symmetric)."""
        if self.d < 2:
            return np.zeros((self.n, self.n))
        x = np.asarray(point, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"point has shape {x.shape}, expected ({self.n},)")
        h = np.zeros((self.n, self.n))
        for exps, coeff in self.terms.items():
            c = float(coeff)
            support = [i for i, e in enumerate(exps) if e > 0]
            for ii, i in enumerate(support):
                for j in support[ii:]:
                    if i == j:
                        factor = exps[i] * (exps[i] - 1)
                        if factor == 0:
                            continue
                    else:
                        factor = exps[i] * exps[j]
                    value = c * factor
                    for k, ek in enumerate(exps):
                        power = ek
                        if k == i:
                            power -= 1
                        if k == j:
                            power -= 1
                        if power:
                            value *= x[k] ** power
                    h[i, j] += value
                    if i != j:
                        h[j, i] += value
        return h

    def compose_linear(self, matrix) -> "Polynomial":
        """Exact expansion of f(Ax): substitutes x_i -> sum_j A[i][j] x_j."""
        rows = [rational_vector(row) for row in matrix]
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"matrix must be {self.n}x{self.n}")
        images = [
            Polynomial(self.n, 1, {tuple(0 if k != j else 1 for k in range(self.n)): rows[i][j]
                                   for j in range(self.n) if rows[i][j] != 0})
            for i in range(self.n)
        ]
        result = Polynomial.zero(self.n, self.d)
        for exps, coeff in self.terms.items():
            term = Polynomial.constant(self.n, coeff)
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * images[i]
            result = result + term
        return result

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            coeff = self.terms[exps]
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(parts)


class ParseError(ValueError):
    """Polynomial grammar violation, with 1-based line/column location."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?P<num>\d+)|\s*(?P<var>x\d+)|\s*(?P<op>[-+*/^])|\s*(?P<bad>\S)")


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        ws = text[pos:m.start(m.lastgroup)]
        for ch in ws:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        value = m.group(m.lastgroup)
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {value!r}", line, col)
        tokens.append((m.lastgroup, value, line, col))
        for ch in value:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(("end", "", line, col))
    return tokens


def parse_polynomial(text: str, n: int | None = None) -> Polynomial:
    """Parse the polynomial grammar; ``n`` pads/validates the variable count.

    The variable count defaults to the largest index mentioned.  Raises
    :class:`ParseError` with line/column on syntax errors and on
    inhomogeneous input (naming the two offending degrees).
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take(kind=None):
        nonlocal pos
        tok = tokens[pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}" if tok[1] else f"unexpected end of input", tok[2], tok[3])
        pos += 1
        return tok

    # term -> (coefficient, {var index: exponent}, line, col)
    def parse_term():
        kind, value, line, col = peek()
        coeff = Fraction(1)
        exps: dict[int, int] = {}
        saw_factor = False
        while True:
            kind, value, tl, tc = peek()
            if kind == "num":
                take()
                numer = int(value)
                if peek()[0] == "op" and peek()[1] == "/":
                    take()
                    dtok = take("num")
                    if int(dtok[1]) == 0:
                        raise ParseError("zero denominator", dtok[2], dtok[3])
                    coeff *= Fraction(numer, int(dtok[1]))
                else:
                    coeff *= numer
                saw_factor = True
            elif kind == "var":
                take()
                index = int(value[1:])
                if index < 1:
                    raise ParseError("variable indices are 1-based", tl, tc)
                power = 1
                if peek()[0] == "op" and peek()[1] == "^":
                    take()
                    ptok = take("num")
                    power = int(ptok[1])
                exps[index - 1] = exps.get(index - 1, 0) + power
                saw_factor = True
            else:
                raise ParseError(f"expected a coefficient or variable, found {value!r}" if value else "expected a coefficient or variable", tl, tc)
            if peek()[0] == "op" and peek()[1] == "*":
                take()
                continue
            break
        if not saw_factor:
            raise ParseError("empty term", line, col)
        return coeff, exps, line, col

    terms = []
    sign = Fraction(1)
    kind, value, line, col = peek()
    if kind == "op" and value in "+-":
        take()
        sign = Fraction(-1) if value == "-" else Fraction(1)
    elif kind == "end":
        raise ParseError("empty input", line, col)
    while True:
        coeff, exps, tl, tc = parse_term()
        terms.append((sign * coeff, exps, tl, tc))
        kind, value, line, col = peek()
        if kind == "end":
            break
        if kind == "op" and value in "+-":
            take()
            sign = Fraction(-1) if value == "-" else Fraction(1)
        else:
            raise ParseError(f"expected '+' or '-', found {value!r}", line, col)

    max_index = max((max(e) + 1 for _, e, _, _ in terms if e), default=1)
    if n is None:
        n = max_index
    elif max_index > n:
        raise ParseError(f"variable x{max_index} exceeds the declared count {n}", 1, 1)

    degree = None
    degree_loc = None
    acc: dict[Exponents, Fraction] = {}
    for coeff, exps, tl, tc in terms:
        if coeff == 0:
            continue
        deg = sum(exps.values())
        if degree is None:
            degree, degree_loc = deg, (tl, tc)
        elif deg != degree:
            raise ParseError(f"inhomogeneous polynomial: degrees {degree} and {deg}", tl, tc)
        key = tuple(exps.get(i, 0) for i in range(n))
        acc[key] = acc.get(key, Fraction(0)) + coeff
    if degree is None:
        return Polynomial.zero(n, 0)
    return Polynomial(n, degree, acc)


class QuadraticForm:
    """Quadratic form on R^n with exact symmetric rational matrix.

    q(x) = x^t Q x; off-diagonal entries are half the mixed coefficients of
    the degree-2 polynomial the form was built from.
    """

    __slots__ = ("n", "matrix", "_cache")

    def __init__(self, matrix: Sequence[Sequence]):
        rows = [rational_vector(row) for row in matrix]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", tuple(rows))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *_):
        raise AttributeError("QuadraticForm is immutable")

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"QuadraticForm(n={self.n})"

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for row in self.matrix for c in row)

    def matrix_float(self) -> np.ndarray:
        cached = self._cache.get("float")
        if cached is None:
            cached = np.array([[float(c) for c in row] for row in self.matrix])
            self._cache["float"] = cached
        return cached

    def to_polynomial(self) -> Polynomial:
        n = self.n
        terms: dict[Exponents, Fraction] = {}
        for i in range(n):
            for j in range(i, n):
                coeff = self.matrix[i][j] if i == j else 2 * self.matrix[i][j]
                if coeff == 0:
                    continue
                exps = [0] * n
                exps[i] += 1
                exps[j] += 1
                terms[tuple(exps)] = coeff
        return Polynomial(n, 2, terms)

    def evaluate_exact(self, point) -> Fraction:
        x = rational_vector(point)
        total = Fraction(0)
        for i in range(self.n):
            for j in range(self.n):
                if self.matrix[i][j] != 0:
                    total += x[i] * self.matrix[i][j] * x[j]
        return total


def as_quadratic(f: Polynomial) -> QuadraticForm:
    """Matrix of a degree-2 polynomial: x^t Q x reproduces f exactly."""
    if f.d != 2:
        raise ValueError(f"expected degree 2, got degree {f.d}")
    n = f.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for exps, coeff in f.terms.items():
        support = [i for i, e in enumerate(exps) if e > 0]
        if len(support) == 1:
            i = support[0]
            rows[i][i] = coeff
        else:
            i, j = support
            rows[i][j] = coeff / 2
            rows[j][i] = coeff / 2
    return QuadraticForm(rows)


def directional_derivative(f: Polynomial, a) -> Polynomial:
    return f.directional_derivative(a)


def hessian_at(f: Polynomial, point) -> np.ndarray:
    return f.hessian_at(point)


def compose_linear(f: Polynomial, matrix) -> Polynomial:
    return f.compose_linear(matrix)
