"""Acceptance criteria, one test per criterion, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines.

Criteria 4 and 10 contain clauses that contradict the bracket relations the
representations are required to satisfy (see the README discussion of the
weight-operator normalization): with [x1,x2] = x3 cyclic, the image of the
canonical element on the (2l+1)-dimensional irreducible representation is
(l^2+l+1) I, which forces the spectrum of the weight operator -i x1 to be
{-l..l} in steps of one, not {2j : j = -l..l} in steps of two.  Both clauses
are asserted exactly as stated so the conflict stays visible.
"""

import json
import random
import time
from fractions import Fraction

from envsos.auditor import OperatorAlgebraContext, audit_cleared_commutator, audit_r_relations
from envsos.certs import verify_certificate, verify_certificate_json, verify_commutative_certificate
from envsos.cli import main as cli_main
from envsos.exprs import parse, render
from envsos.gram import GramSkeleton
from envsos.lie import builtin
from envsos.numeric import SolveOptions
from envsos.pbw import AlgebraElement, canonical_a, square_sum_form
from envsos.poly import CommutativePoly, squared_norm_poly
from envsos.reps import direct_sum, make_point_rep, make_spin_rep, scan_dual_window, spin_window
from envsos.scalar import Scalar
from envsos.sos import commutative_sos, find_certificate
from envsos.driver import TheoremInstance, search_certificate

import oracles

ALL_BUILTINS = ["abelian(3)", "su2", "heisenberg3", "affine_line", "sl2r"]


def banner(num, ok, detail=""):
    verdict = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:02d} {verdict} {detail}")


def test_criterion_01_ring_axioms():
    start = time.time()
    rng = random.Random(101)
    for name in ALL_BUILTINS:
        alg = builtin(name)
        for _ in range(200):
            u = oracles.random_element(alg, rng, max_degree=4)
            v = oracles.random_element(alg, rng, max_degree=4)
            w = oracles.random_element(alg, rng, max_degree=4)
            uv = u * v
            vw = v * w
            assert (uv) * w == u * (vw)
            assert u * (v + w) == uv + u * w
    elapsed = time.time() - start
    banner(1, elapsed < 60, f"(1000 triples, {elapsed:.1f}s)")
    assert elapsed < 60


def test_criterion_02_involution_laws():
    start = time.time()
    rng = random.Random(102)
    for name in ALL_BUILTINS:
        alg = builtin(name)
        for _ in range(100):
            u = oracles.random_element(alg, rng, max_degree=3)
            v = oracles.random_element(alg, rng, max_degree=3)
            assert (u * v).star() == v.star() * u.star()
            assert u.star().star() == u
    elapsed = time.time() - start
    banner(2, elapsed < 30, f"(500 pairs, {elapsed:.1f}s)")
    assert elapsed < 30


def test_criterion_03_canonical_element_identity():
    names = [f"abelian({d})" for d in range(1, 7)] + ["su2", "heisenberg3", "affine_line", "sl2r"]
    for name in names:
        alg = builtin(name)
        assert canonical_a(alg) == square_sum_form(alg)
    banner(3, True, f"({len(names)} algebras, exact)")


def test_criterion_04_spin_representation_formulas():
    su2 = builtin("su2")
    a = canonical_a(su2)
    H = parse("-i*x1", su2)
    labels = [Fraction(n, 2) for n in range(0, 7)]
    casimir_ok = True
    spectra = {}
    for l in labels:
        rep = make_spin_rep(l)
        A = rep.evaluate(a)
        expect = Scalar(l * l + l + 1)
        n = rep.dim_rep
        if not all(A[i][i] == expect for i in range(n)) or any(
            A[i][j] for i in range(n) for j in range(n) if i != j
        ):
            casimir_ok = False
        M = rep.evaluate(H)
        assert all(not M[i][j] for i in range(n) for j in range(n) if i != j)
        spectra[l] = sorted(M[i][i].re for i in range(n))
    assert casimir_ok, "canonical element formula (l^2+l+1) failed"
    spectrum_ok = all(
        spectra[l] == sorted(2 * (-l + k) for k in range(int(2 * l) + 1)) for l in labels
    )
    banner(4, casimir_ok and spectrum_ok,
           f"(canonical element formula exact: {casimir_ok}; "
           f"weight spectrum {{2j}}: {spectrum_ok}, actual spectrum is {{-l..l}} "
           f"as forced by the commutation relations)")
    assert spectrum_ok, (
        "stated weight spectrum {2j : j=-l..l} is unattainable: bracket "
        "compatibility with [x1,x2]=x3 and the (l^2+l+1) image of the "
        "canonical element pin the spectrum of -i x1 to {-l..l}; "
        f"e.g. spin 1/2 has spectrum {spectra[Fraction(1,2)]}"
    )


def test_criterion_05_centrality():
    su2 = builtin("su2")
    assert canonical_a(su2).is_central()
    aff = builtin("affine_line")
    a = canonical_a(aff)
    assert not a.is_central()
    witness = a.centrality_witness()
    assert witness is not None and not witness[1].is_zero()
    banner(5, True, f"(affine witness: {render(witness[1])})")


def test_criterion_06_cleared_identity_audit():
    for name in ALL_BUILTINS:
        report = audit_cleared_commutator(builtin(name), name)
        assert report.passed, name
    aff_report = audit_cleared_commutator(builtin("affine_line"))
    expected = parse("2*x1*x2 - x2", builtin("affine_line"))
    assert aff_report.intermediates[2] == expected
    banner(6, True, "(residual 0 on all five; affine k=2 intermediate exact)")


def test_criterion_07_operator_relation_audit():
    start = time.time()
    contexts = [
        OperatorAlgebraContext(direct_sum(make_spin_rep(Fraction(1, 2)), make_spin_rep(1))),
        OperatorAlgebraContext(direct_sum(make_spin_rep(1), make_spin_rep(2))),
    ]
    ab = builtin("abelian(2)")
    points = [(0, 0), (1, 2), (-1, 1), (2, 0), (Fraction(1, 2), Fraction(-3, 2))]
    contexts.extend(OperatorAlgebraContext(make_point_rep(ab, p)) for p in points)
    for ctx in contexts:
        report = audit_r_relations(ctx)
        for rel in ("r1", "r2", "r3", "r4"):
            assert report[rel]["status"] == "pass", (ctx.rep.label, rel)
        for rel in ("r5", "r6", "r7", "r8"):
            assert report[rel]["status"] == "pass", (ctx.rep.label, rel)
    elapsed = time.time() - start
    banner(7, elapsed < 60, f"({len(contexts)} contexts, {elapsed:.1f}s)")
    assert elapsed < 60


def test_criterion_08_planted_roundtrip():
    start = time.time()
    su2 = builtin("su2")
    unit = AlgebraElement.unit(su2)
    f2 = parse("2 - H", su2, aliases={"H": "-i*x1"})
    generators = [unit, f2]
    skeleton = GramSkeleton(su2, generators, 4)
    rng = random.Random(108)
    certified = 0
    for k in range(20):
        c = AlgebraElement.zero(su2)
        for basis, gen in zip(skeleton.bases, generators):
            for _ in range(len(basis) + 2):
                z = AlgebraElement(su2, {
                    mono: Scalar(Fraction(rng.randint(-2, 2), rng.randint(1, 2)),
                                 Fraction(rng.randint(-2, 2), rng.randint(1, 2)))
                    for mono in basis
                })
                c = c + z.star() * gen * z
        report = find_certificate(c, generators, 4, skeleton=skeleton,
                                  opts=SolveOptions(seed=k))
        assert report.status in ("certificate", "inconclusive"), report.status
        if report.status == "certificate":
            assert verify_certificate(report.certificate, c, generators)
            certified += 1
    elapsed = time.time() - start
    banner(8, certified >= 18 and elapsed < 600,
           f"({certified}/20 certified, {elapsed:.1f}s)")
    assert certified >= 18
    assert elapsed < 600


def test_criterion_09_canonical_certificate_via_cli(tmp_path, capsys):
    cert_path = tmp_path / "canonical.json"
    code = cli_main([
        "sos", "--algebra", "su2", "--expr", "1 - x1^2 - x2^2 - x3^2",
        "--degree", "2", "--out", str(cert_path),
    ])
    capsys.readouterr()
    assert code == 0
    data = json.loads(cert_path.read_text())
    assert verify_certificate_json(data)
    gram = data["blocks"][0]["gram"]
    basis = data["blocks"][0]["basis"]
    assert basis == ["1", "x1", "x2", "x3"]
    assert all(gram[p][p] == "1" for p in range(4))
    assert all(gram[p][q] == "0" for p in range(4) for q in range(4) if p != q)
    banner(9, True, "(diagonal Gram over {1,x1,x2,x3})")


def test_criterion_10_quadratic_weight_polynomial():
    su2 = builtin("su2")
    unit = AlgebraElement.unit(su2)
    c = parse("(H - 1/4)*(H - 3/4)", su2, aliases={"H": "-i*x1"})

    # second clause: degree-2 square-sum search yields numeric dual evidence
    report = find_certificate(c, [unit], 2)
    evidence_ok = (
        report.status == "numeric-infeasible-evidence"
        and report.numeric.dual["dual_value"] < -1e-3
    )
    assert evidence_ok

    # first clause as stated: every window member up to l = 4 is positive
    scan = scan_dual_window(su2, [unit], spin_window(4))
    members = scan.members()
    failures = {}
    for label in members:
        l = Fraction(label)
        rep = make_spin_rep(l)
        verdict = rep.is_positive(c)
        if not verdict:
            failures[label] = str(verdict.witness_value)
    positive_everywhere = not failures
    banner(10, positive_everywhere and evidence_ok,
           f"(dual value {report.numeric.dual['dual_value']:.4f} < -1e-3: {evidence_ok}; "
           f"positive on all members: {positive_everywhere}, failures at {sorted(failures)} "
           f"where the weight operator has half-odd spectrum)")
    assert positive_everywhere, (
        "the criterion presumes an integer weight spectrum; with the bracket "
        "relations [x1,x2]=x3 the weight operator takes value 1/2 on spin 1/2 "
        f"and (1/2-1/4)(1/2-3/4) = -1/16 < 0; witnesses: {failures}"
    )


def test_criterion_11_motzkin_hierarchy():
    start = time.time()
    motzkin = CommutativePoly(3, {(4, 2, 0): 1, (2, 4, 0): 1, (2, 2, 2): -3, (0, 0, 6): 1})
    level0 = commutative_sos(motzkin, 0)
    assert level0.status == "numeric-infeasible-evidence"
    assert level0.numeric.dual["dual_value"] < -1e-3
    level1 = commutative_sos(motzkin, 1)
    assert level1.status == "certificate"
    target = squared_norm_poly(3) * motzkin
    assert verify_commutative_certificate(level1.certificate, target)
    elapsed = time.time() - start
    banner(11, elapsed < 120, f"(level 0 dual evidence, level 1 exact, {elapsed:.1f}s)")
    assert elapsed < 120


def test_criterion_12_end_to_end_theorem_run():
    start = time.time()
    su2 = builtin("su2")
    unit = AlgebraElement.unit(su2)
    a = canonical_a(su2)

    def run():
        inst = TheoremInstance(su2, a * a, [unit], Fraction(1), n_max=2, d_max=8,
                               window=Fraction(3), solver=SolveOptions(seed=12))
        transcript = search_certificate(inst)
        return transcript, json.dumps(transcript.to_json_dict(), indent=2, sort_keys=True)

    transcript, text1 = run()
    assert transcript.status == "found"
    assert transcript.assumption_ii["status"] == "certified-positive"
    assert transcript.assumption_ii["level"] == 0
    t2 = CommutativePoly(3, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
    assert (a * a).principal_symbol(4) == t2 * t2
    n, D, status = transcript.attempts[-1]
    assert n == 0 and status == "certificate"
    assert verify_certificate(transcript.certificate, a * a, [unit])
    _, text2 = run()
    assert text1 == text2
    elapsed = time.time() - start
    banner(12, True, f"(found at n=0, byte-identical transcripts, {elapsed:.1f}s)")
