"""Exact certificates and the rounding layer that produces them.

A weighted certificate stores, per generator block, the monomial basis and an
exact Hermitian PSD Gram matrix.  Its two defining invariants are recomputed
from scratch by verify_certificate: exact PSD-ness (LDL) and the bit-exact
re-expansion identity against the target.  round_and_verify is the only path
that emits certificates, so nothing unverified ever escapes.

Rounding follows the usual recipe: snap the numeric Gram entries to rationals
with denominator 2^k, project exactly onto the affine constraint subspace,
and test PSD exactly; k escalates until success or exhaustion.
"""

from __future__ import annotations

from fractions import Fraction

from . import lie
from .errors import CertificateFormatError
from .exactla import ldl_hermitian
from .exprs import parse, render
from .gram import CommGramProblem, SdpProblem
from .pbw import AlgebraElement
from .poly import CommutativePoly
from .scalar import format_fraction, format_scalar, parse_scalar

SCHEMA_VERSION = 1
ROUNDING_EXPONENTS = (10, 20, 30, 40, 50, 60)


class WeightedSosCertificate:
    def __init__(self, algebra, degree, target, generators, bases, grams, ldl_results):
        self.algebra = algebra
        self.degree = degree
        self.target = target
        self.generators = list(generators)
        self.bases = [list(b) for b in bases]
        self.grams = grams
        self.ldl_results = ldl_results

    def to_json_dict(self) -> dict:
        blocks = []
        for bidx, (basis, gram, ldl) in enumerate(
            zip(self.bases, self.grams, self.ldl_results)
        ):
            blocks.append(
                {
                    "l": bidx + 1,
                    "basis": [_render_monomial_text(self.algebra, m) for m in basis],
                    "gram": [[format_scalar(v) for v in row] for row in gram],
                    "ldl_witness": _ldl_to_json(ldl),
                }
            )
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "weighted_sos",
            "degree": self.degree,
            "algebra": lie.to_json_dict(self.algebra),
            "target": render(self.target),
            "generators": [render(g) for g in self.generators],
            "blocks": blocks,
        }


class CommutativeSosCertificate:
    def __init__(self, target: CommutativePoly, level: int, basis, gram, ldl):
        self.target = target          # the polynomial actually decomposed
        self.level = level
        self.basis = list(basis)
        self.gram = gram
        self.ldl = ldl

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "commutative_sos",
            "level": self.level,
            "nvars": self.target.nvars,
            "target": self.target.render(),
            "target_coeffs": _poly_to_json(self.target),
            "basis": [list(m) for m in self.basis],
            "gram": [[format_scalar(v) for v in row] for row in self.gram],
            "ldl_witness": _ldl_to_json(self.ldl),
        }


def _ldl_to_json(ldl) -> dict:
    return {
        "perm": list(ldl.perm),
        "diag": [format_fraction(d) for d in ldl.diag],
        "lower": [[format_scalar(v) for v in row] for row in ldl.lower],
    }


def _poly_to_json(p: CommutativePoly):
    return [
        {"exponents": list(m), "coeff": format_fraction(q)}
        for m, q in sorted(p.coeffs.items())
    ]


def _poly_from_json(nvars, entries) -> CommutativePoly:
    return CommutativePoly(
        nvars, {tuple(e["exponents"]): Fraction(e["coeff"]) for e in entries}
    )


def _render_monomial_text(algebra, mono) -> str:
    if not any(mono):
        return "1"
    parts = []
    for idx, e in enumerate(mono):
        if e == 1:
            parts.append(algebra.names[idx])
        elif e > 1:
            parts.append(f"{algebra.names[idx]}^{e}")
    return "*".join(parts)


# -- rounding ---------------------------------------------------------------------


class RoundingFailed(Exception):
    pass


def _round_vector(g, k: int):
    scale = 1 << k
    return [Fraction(round(float(x) * scale), scale) for x in g]


def round_and_verify(problem: SdpProblem, g_numeric,
                     exponents=ROUNDING_EXPONENTS) -> WeightedSosCertificate:
    """Turn a numeric Gram candidate into an exact verified certificate.

    Raises RoundingFailed when no denominator 2^k in the schedule produces an
    exactly feasible PSD point.
    """
    for k in exponents:
        g = _round_vector(g_numeric, k)
        g = problem.system.project_exact(g)
        if any(r != 0 for r in problem.system.residual_exact(g)):
            continue  # inconsistent system cannot round (caught earlier anyway)
        blocks = problem.gram_blocks_exact(g)
        ldls = []
        ok = True
        for G in blocks:
            res = ldl_hermitian(G)
            if not res.psd:
                ok = False
                break
            ldls.append(res)
        if not ok:
            continue
        cert = WeightedSosCertificate(
            problem.algebra, problem.degree, problem.target,
            problem.generators, problem.skeleton.bases, blocks, ldls,
        )
        if verify_certificate(cert, problem.target, problem.generators):
            return cert
    raise RoundingFailed("no dyadic rounding produced an exact PSD solution")


def round_and_verify_commutative(problem: CommGramProblem, g_numeric, level: int,
                                 exponents=ROUNDING_EXPONENTS) -> CommutativeSosCertificate:
    for k in exponents:
        g = _round_vector(g_numeric, k)
        g = problem.system.project_exact(g)
        if any(r != 0 for r in problem.system.residual_exact(g)):
            continue
        G = problem.gram_exact(g)
        if not G:
            if problem.target.is_zero():
                return CommutativeSosCertificate(problem.target, level, [], [], ldl_hermitian([]))
            continue
        res = ldl_hermitian(G)
        if not res.psd:
            continue
        cert = CommutativeSosCertificate(problem.target, level, problem.basis, G, res)
        if verify_commutative_certificate(cert, problem.target):
            return cert
    raise RoundingFailed("no dyadic rounding produced an exact PSD solution")


# -- verification ------------------------------------------------------------------


def verify_certificate(cert: WeightedSosCertificate, target: AlgebraElement,
                       generators) -> bool:
    """Recompute both certificate invariants from scratch, exactly.

    Independent of how the certificate was produced: PSD is re-decided by a
    fresh LDL and the re-expansion identity is recomputed term by term.
    """
    generators = list(generators)
    if len(cert.bases) != len(generators):
        return False
    if cert.target != target:
        return False
    total = AlgebraElement.zero(target.algebra)
    for basis, gram, gen in zip(cert.bases, cert.grams, generators):
        n = len(basis)
        if len(gram) != n or any(len(row) != n for row in gram):
            return False
        if n == 0:
            continue
        for p in range(n):
            if not gram[p][p].is_real():
                return False
            for q in range(n):
                if gram[p][q] != gram[q][p].conj():
                    return False
        if not ldl_hermitian(gram).psd:
            return False
        for p in range(n):
            wp_star = AlgebraElement.monomial(target.algebra, basis[p]).star()
            left = wp_star * gen
            for q in range(n):
                if gram[p][q]:
                    wq = AlgebraElement.monomial(target.algebra, basis[q])
                    total = total + (left * wq).scale(gram[p][q])
    return total == target


def verify_commutative_certificate(cert: CommutativeSosCertificate,
                                   target: CommutativePoly) -> bool:
    if cert.target != target:
        return False
    n = len(cert.basis)
    if len(cert.gram) != n or any(len(row) != n for row in cert.gram):
        return False
    out: dict = {}
    for p in range(n):
        for q in range(n):
            s = cert.gram[p][q]
            if s:
                if not s.is_real() or cert.gram[q][p] != s:
                    return False
                mono = tuple(a + b for a, b in zip(cert.basis[p], cert.basis[q]))
                out[mono] = out.get(mono, Fraction(0)) + s.re
    if CommutativePoly(target.nvars, out) != target:
        return False
    if n and not ldl_hermitian(cert.gram).psd:
        return False
    return True


# -- JSON loading -------------------------------------------------------------------


def _parse_gram(rows):
    return [[parse_scalar(v) for v in row] for row in rows]


def certificate_from_json(data: dict):
    """Parse a certificate JSON document (either kind)."""
    try:
        kind = data["kind"]
        if kind == "weighted_sos":
            algebra = lie.from_json_dict(data["algebra"])
            target = parse(data["target"], algebra)
            generators = [parse(g, algebra) for g in data["generators"]]
            bases = []
            grams = []
            ldls = []
            blocks = sorted(data["blocks"], key=lambda blk: blk["l"])
            for blk in blocks:
                basis = [
                    tuple(parse(t, algebra).sorted_terms()[0][0]) if t != "1" else (0,) * algebra.dim
                    for t in blk["basis"]
                ]
                bases.append(basis)
                gram = _parse_gram(blk["gram"])
                grams.append(gram)
                ldls.append(ldl_hermitian(gram) if gram else None)
            return WeightedSosCertificate(
                algebra, int(data["degree"]), target, generators, bases, grams, ldls
            ), target, generators
        if kind == "commutative_sos":
            nvars = int(data["nvars"])
            target = _poly_from_json(nvars, data["target_coeffs"])
            basis = [tuple(m) for m in data["basis"]]
            gram = _parse_gram(data["gram"])
            cert = CommutativeSosCertificate(
                target, int(data["level"]), basis, gram,
                ldl_hermitian(gram) if gram else None,
            )
            return cert, target, None
        raise CertificateFormatError(f"unknown certificate kind {kind!r}")
    except CertificateFormatError:
        raise
    except Exception as exc:
        raise CertificateFormatError(f"malformed certificate: {exc}") from exc


def verify_certificate_json(data: dict) -> bool:
    cert, target, generators = certificate_from_json(data)
    if isinstance(cert, WeightedSosCertificate):
        return verify_certificate(cert, target, generators)
    return verify_commutative_certificate(cert, target)
