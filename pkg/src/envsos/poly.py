"""Commutative polynomials with rational coefficients.

These carry principal symbols and the commutative sum-of-squares mode.  The
representation mirrors AlgebraElement: sparse map from exponent tuples to
Fractions, but multiplication is plain exponent addition.
"""

from __future__ import annotations

from fractions import Fraction


class CommutativePoly:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: dict | None = None):
        self.nvars = nvars
        clean = {}
        if coeffs:
            for m, q in coeffs.items():
                q = q if isinstance(q, Fraction) else Fraction(q)
                if q:
                    clean[tuple(m)] = q
        self.coeffs = clean

    @staticmethod
    def zero(nvars: int) -> "CommutativePoly":
        return CommutativePoly(nvars)

    @staticmethod
    def constant(nvars: int, value) -> "CommutativePoly":
        return CommutativePoly(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(nvars: int, idx: int) -> "CommutativePoly":
        mono = [0] * nvars
        mono[idx] = 1
        return CommutativePoly(nvars, {tuple(mono): Fraction(1)})

    @staticmethod
    def monomial(nvars: int, mono, coeff=1) -> "CommutativePoly":
        return CommutativePoly(nvars, {tuple(mono): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int | None:
        if not self.coeffs:
            return None
        return max(sum(m) for m in self.coeffs)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.coeffs}
        return len(degrees) <= 1

    def __eq__(self, other):
        if not isinstance(other, CommutativePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "CommutativePoly") -> "CommutativePoly":
        out = dict(self.coeffs)
        for m, q in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + q
        return CommutativePoly(self.nvars, out)

    def __sub__(self, other: "CommutativePoly") -> "CommutativePoly":
        return self + (-other)

    def __neg__(self) -> "CommutativePoly":
        return CommutativePoly(self.nvars, {m: -q for m, q in self.coeffs.items()})

    def scale(self, factor) -> "CommutativePoly":
        factor = Fraction(factor)
        return CommutativePoly(self.nvars, {m: factor * q for m, q in self.coeffs.items()})

    def __mul__(self, other: "CommutativePoly") -> "CommutativePoly":
        out: dict = {}
        for m1, q1 in self.coeffs.items():
            for m2, q2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + q1 * q2
        return CommutativePoly(self.nvars, out)

    def __pow__(self, n: int) -> "CommutativePoly":
        result = CommutativePoly.constant(self.nvars, 1)
        for _ in range(n):
            result = result * self
        return result

    def differentiate(self, idx: int) -> "CommutativePoly":
        out = {}
        for m, q in self.coeffs.items():
            e = m[idx]
            if e:
                mm = list(m)
                mm[idx] -= 1
                out[tuple(mm)] = out.get(tuple(mm), Fraction(0)) + q * e
        return CommutativePoly(self.nvars, out)

    def evaluate(self, point) -> Fraction:
        """Exact evaluation at a rational point."""
        total = Fraction(0)
        for m, q in self.coeffs.items():
            term = q
            for i, e in enumerate(m):
                if e:
                    term *= Fraction(point[i]) ** e
            total += term
        return total

    def evaluate_float(self, point) -> float:
        total = 0.0
        for m, q in self.coeffs.items():
            term = float(q)
            for i, e in enumerate(m):
                if e:
                    term *= float(point[i]) ** e
            total += term
        return total

    def __repr__(self):
        return f"CommutativePoly({self.nvars}, {self.coeffs!r})"

    def render(self, var_prefix: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m, q in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0]))):
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"{var_prefix}{i+1}")
                elif e > 1:
                    factors.append(f"{var_prefix}{i+1}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append((q, str(abs(q))))
            elif abs(q) == 1:
                parts.append((q, body))
            else:
                parts.append((q, f"{abs(q)}*{body}"))
        text = ""
        for q, body in parts:
            if not text:
                text = body if q > 0 else f"-{body}"
            else:
                text += f" + {body}" if q > 0 else f" - {body}"
        return text


def squared_norm_poly(nvars: int) -> CommutativePoly:
    """t_1^2 + ... + t_d^2, the sphere multiplier of the hierarchy."""
    out = CommutativePoly.zero(nvars)
    for i in range(nvars):
        v = CommutativePoly.variable(nvars, i)
        out = out + v * v
    return out
