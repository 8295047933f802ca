"""Self-check suite: every published anchor value recomputed from scratch.

Each criterion is a pure function returning a CriterionResult; run_criteria
evaluates all of them.  Failures name the first offending input with the
expected and computed values, so a regression points straight at the broken
anchor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .assembly import compute_invariants, realize_spec_chi
from .catalog import V_ALPHA, FormalVolume
from .meyer import fiber_sum_signature, meyer_function
from .recipes import (
    CONSTRUCTED,
    UNKNOWN_OPEN,
    recipe_fill_semibundle,
    recipe_fill_torus_bundle,
    recipe_xn,
)
from .sl2z import (
    B,
    ID,
    S,
    T,
    GeneratorWord,
    abelianization_class,
    are_conjugate,
    is_in_derived_subgroup,
    matrix_to_word,
    semibundle_relator,
    word_to_matrix,
)
from .wall import semibundle_wall_data, wall_correction, wall_correction_form


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _outcome(number, name, failures, ok_detail) -> CriterionResult:
    if failures:
        head = failures[0]
        if len(failures) > 1:
            head += f" (and {len(failures) - 1} more)"
        return CriterionResult(number, name, False, head)
    return CriterionResult(number, name, True, ok_detail)


def criterion_1() -> CriterionResult:
    failures = []
    for k in range(-36, 37):
        if k == 0:
            continue
        expected = (1 if k > 0 else -1) - Fraction(k, 3)
        got = meyer_function(B ** k)
        if got != expected:
            failures.append(f"M(B^{k}): expected {expected}, computed {got}")
    if meyer_function(ID) != 0:
        failures.append(f"M(id): expected 0, computed {meyer_function(ID)}")
    return _outcome(
        1,
        "meyer twist formula",
        failures,
        "M(B^k) = sign(k) - k/3 for 72 values of k and M(id) = 0",
    )


def criterion_2() -> CriterionResult:
    failures = []
    for n in range(1, 11):
        ms = [B, B ** 3] * n + [B ** (-4 * n)]
        got = fiber_sum_signature(ms)
        if got != 2 * n - 1:
            failures.append(f"n={n}: expected {2 * n - 1}, computed {got}")
    return _outcome(
        2,
        "fiber sum signature",
        failures,
        "signature (B,B^3) x n, B^(-4n) = 2n-1 for n = 1..10",
    )


def criterion_3() -> CriterionResult:
    failures = []
    for k in range(1, 21):
        triple = semibundle_wall_data(B ** k)
        reps, gram = wall_correction_form(triple)
        if len(reps) != 1:
            failures.append(f"k={k}: expected dim U = 1, computed {len(reps)}")
            continue
        if gram != ((Fraction(-2 * k),),):
            failures.append(
                f"k={k}: expected Gram [[-2k]] = [[{-2 * k}]], computed {gram}"
            )
        corr = wall_correction(triple)
        if corr != -1:
            failures.append(f"k={k}: expected correction -1, computed {corr}")
    return _outcome(
        3,
        "wall correction",
        failures,
        "dim U = 1, Gram [[-2k]], correction -1 for k = 1..20",
    )


def criterion_4() -> CriterionResult:
    failures = []
    for n in range(13):
        report = compute_invariants(recipe_xn(n))
        expected_l2 = tuple(Fraction(x) for x in (0, 0, n, 0, 0))
        checks = [
            ("closed", report.closed, True),
            ("aspherical", report.aspherical, True),
            ("euler", report.euler, n),
            ("signature", report.signature, n),
            ("l2_betti", report.l2_betti, expected_l2),
            ("sv", report.sv, FormalVolume.of({V_ALPHA: n})),
        ]
        for label, got, expected in checks:
            if got != expected:
                failures.append(
                    f"X_{n} {label}: expected {expected}, computed {got}"
                )
    return _outcome(
        4,
        "closed family invariants",
        failures,
        "X_n closed aspherical with euler = signature = n, "
        "l2 = (0,0,n,0,0), sv = n*v_alpha for n = 0..12",
    )


def criterion_5() -> CriterionResult:
    failures = []
    order = abelianization_class(B).additive_order
    if order != 12:
        failures.append(f"order of class(B): expected 12, computed {order}")
    rng = random.Random(1205)
    for i in range(100):
        letters = []
        gen = rng.choice("ST")
        for _ in range(rng.randrange(1, 21)):
            letters.append((gen, rng.choice((-3, -2, -1, 1, 2, 3))))
            gen = "T" if gen == "S" else "S"
        m = word_to_matrix(GeneratorWord.of(letters))
        if not is_in_derived_subgroup(m ** 12):
            failures.append(
                f"word #{i}: 12th power has class "
                f"{abelianization_class(m ** 12)}, expected 0"
            )
    return _outcome(
        5,
        "abelianization order and derived powers",
        failures,
        "class(B) has order 12; phi^12 lands in the derived subgroup "
        "for 100 pseudorandom words",
    )


def criterion_6() -> CriterionResult:
    failures = []
    for k in range(1, 21):
        got = semibundle_relator(B ** k)
        if got != B ** (2 * k):
            failures.append(
                f"k={k}: expected B^{2 * k}, computed {got.compact()}"
            )
    return _outcome(
        6,
        "semibundle relator",
        failures,
        "relator(B^k) = B^(2k) for k = 1..20",
    )


def criterion_7() -> CriterionResult:
    # all reduced words of length <= 6 with exponents in [-3,3]: the
    # recovered word must evaluate back to the same matrix
    exps = (-3, -2, -1, 1, 2, 3)
    pow_of = {("S", e): S ** e for e in exps}
    pow_of.update({("T", e): T ** e for e in exps})
    failures = []
    count = 0

    def visit(m):
        nonlocal count
        count += 1
        if word_to_matrix(matrix_to_word(m)) != m:
            failures.append(
                f"matrix {m.compact()}: word round trip changed the value"
            )

    def rec(last_gen, depth, m):
        if depth:
            visit(m)
        if depth == 6 or failures:
            return
        for g in ("S", "T"):
            if g == last_gen:
                continue
            for e in exps:
                rec(g, depth + 1, m * pow_of[(g, e)])

    visit(ID)
    rec(None, 0, ID)
    if not failures and count != 111973:
        failures.append(f"expected 111973 reduced words, enumerated {count}")
    return _outcome(
        7,
        "word round trip",
        failures,
        f"{count} reduced words of length <= 6 re-evaluate exactly",
    )


def criterion_8() -> CriterionResult:
    failures = []
    rng = random.Random(1208)

    def rand_matrix(max_len=14):
        m = ID
        for _ in range(rng.randrange(max_len)):
            m = m * rng.choice([S, S.inverse(), T, T.inverse()])
        if rng.random() < 0.25:
            m = -m
        return m

    for i in range(200):
        phi = rand_matrix()
        g = rand_matrix()
        conj = g * phi * g.inverse()
        res = are_conjugate(phi, conj)
        if not res.conjugate:
            failures.append(
                f"pair #{i}: expected conjugate, computed not "
                f"({phi.compact()} vs {conj.compact()})"
            )
            continue
        w = res.witness
        if w * phi * w.inverse() != conj:
            failures.append(f"pair #{i}: witness fails to conjugate")
    for i in range(200):
        m1, m2 = rand_matrix(), rand_matrix()
        if m1.trace == m2.trace and abelianization_class(m1) == abelianization_class(m2):
            continue
        if are_conjugate(m1, m2).conjugate:
            failures.append(
                f"separated pair #{i}: expected not conjugate, computed "
                f"conjugate ({m1.compact()} vs {m2.compact()})"
            )
    for a, b in ((B, B ** 2), (B, B.inverse())):
        if are_conjugate(a, b).conjugate:
            failures.append(
                f"expected not conjugate, computed conjugate "
                f"({a.compact()} vs {b.compact()})"
            )
    return _outcome(
        8,
        "conjugacy coherence",
        failures,
        "200 constructed pairs conjugate with verified witnesses; "
        "trace/class-separated pairs and (B,B^2), (B,B^-1) all refused",
    )


def criterion_9() -> CriterionResult:
    failures = []
    rng = random.Random(1209)

    def rand_matrix(max_len=10):
        m = ID
        for _ in range(rng.randrange(max_len)):
            m = m * rng.choice([S, S.inverse(), T, T.inverse()])
        return m

    for i in range(500):
        ms = [rand_matrix() for _ in range(rng.randrange(1, 5))]
        prod = ID
        for m in ms:
            prod = m * prod
        ms.append(prod.inverse())
        got = fiber_sum_signature(ms)
        if not isinstance(got, int):
            failures.append(f"tuple #{i}: signature {got!r} is not an integer")
    rejected = 0
    for i in range(100):
        ms = [rand_matrix() for _ in range(rng.randrange(1, 5))]
        prod = ID
        for m in ms:
            prod = m * prod
        if prod == ID:
            ms.append(B)
        try:
            fiber_sum_signature(ms)
        except ValueError:
            rejected += 1
    if rejected != 100:
        failures.append(
            f"expected 100 rejections of non-closing tuples, got {rejected}"
        )
    return _outcome(
        9,
        "meyer integrality",
        failures,
        "500 closing tuples give integer signatures; "
        "100 non-closing tuples rejected",
    )


def criterion_10() -> CriterionResult:
    failures = []
    for n in range(9):
        got = [f.label for f in realize_spec_chi(4, n).factors]
        if got != [f"X_{n}"]:
            failures.append(f"(4,{n}): expected [X_{n}], computed {got}")
    for n, g in ((0, 1), (-2, 2), (-4, 3)):
        got = [f.label for f in realize_spec_chi(6, n).factors]
        if got != ["X_1", f"Sigma_{g}"]:
            failures.append(
                f"(6,{n}): expected [X_1, Sigma_{g}], computed {got}"
            )
    try:
        realize_spec_chi(6, -3)
        failures.append("(6,-3): expected rejection, computed a recipe")
    except ValueError:
        pass
    return _outcome(
        10,
        "euler spectrum realizations",
        failures,
        "(4, 0..8) and (6, 0), (6,-2), (6,-4) factor as expected; "
        "(6,-3) rejected",
    )


def criterion_11() -> CriterionResult:
    failures = []
    for k in range(1, 7):
        outcome = recipe_fill_torus_bundle(B ** (2 * k))
        if outcome.status != CONSTRUCTED:
            failures.append(
                f"T(B^{2 * k}): expected Constructed, computed {outcome.status}"
            )
            continue
        report = compute_invariants(outcome.assembly)
        if report.euler != 0 or report.signature != 1:
            failures.append(
                f"T(B^{2 * k}): expected euler 0 signature 1, computed "
                f"euler {report.euler} signature {report.signature}"
            )
    got = recipe_fill_torus_bundle(B).status
    if got != UNKNOWN_OPEN:
        failures.append(f"T(B): expected UnknownOpen, computed {got}")
    for psi in (ID, B, B ** 2):
        inner = recipe_fill_torus_bundle(psi).status
        outer = recipe_fill_semibundle(psi).status
        if inner != outer:
            failures.append(
                f"N({psi.compact()}): expected status {inner}, computed {outer}"
            )
    return _outcome(
        11,
        "filling outcomes",
        failures,
        "T(B^2k) filled with euler 0 signature 1 for k = 1..6; T(B) open; "
        "semi-bundle statuses mirror the torus bundle ones",
    )


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run_criteria() -> tuple[CriterionResult, ...]:
    return tuple(fn() for fn in CRITERIA)


def format_line(result: CriterionResult) -> str:
    status = "PASS" if result.passed else "FAIL"
    return f"{status} criterion {result.number} ({result.name}): {result.detail}"


def all_passed(results) -> bool:
    return all(r.passed for r in results)
