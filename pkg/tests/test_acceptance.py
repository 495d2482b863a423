"""Acceptance suite: one test per acceptance criterion, exact arithmetic throughout.

Every criterion runs at desk scale (dimensions 1 to 8, tensor order up to 4,
at least 200 random cases where a count is stated) with zero tolerance: all
assertions are exact equalities. Each test prints a PASS/FAIL line; run with
`pytest -s tests/test_acceptance.py` to see them.
"""

import functools
import random
from fractions import Fraction
from pathlib import Path

from degtensor import (
    Matrix,
    NotRadicalAnnihilator,
    Space,
    Tensor,
    change_basis,
    congruence_diagonalize,
    contract_covariant,
    contract_mixed,
    dual_basis,
    extend_cometric,
    flat,
    from_covector,
    from_vector,
    gram_tensor,
    inner,
    is_radannih_slot,
    is_radical_slot,
    lower_index,
    rank,
    signature,
    solve,
    tensor_product,
)
from degtensor.cli import main
from degtensor.tensor import _form_contract_axes

from tests.support import (
    annih_covector,
    nonzero_annih_covector,
    gated_tensor,
    nonradical_slot_tensor,
    nonzero_radical_vector,
    oracle_covariant_trace,
    outside_flat_image,
    radical_slot_tensor,
    rand_space,
    rand_symmetric,
    rand_vector,
    random_radical_basis,
    random_screen,
    unimodular,
)

F = Fraction
FIXTURES = Path(__file__).parent / "fixtures"
CASES = 200


def criterion(name):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {name}: FAIL")
                raise
            print(f"ACCEPTANCE {name}: PASS")

        return run

    return wrap


def counts(d: Matrix) -> tuple[int, int, int]:
    diag = d.diagonal_entries()
    return (
        sum(1 for x in diag if x == 0),
        sum(1 for x in diag if x < 0),
        sum(1 for x in diag if x > 0),
    )


def pick_gated_type(rng: random.Random, n: int) -> tuple[int, int]:
    """Tensor type (r, s) with s >= 2, order capped by the dimension."""
    max_order = 4 if n <= 3 else (3 if n <= 5 else 2)
    s = rng.randint(2, max_order)
    r = rng.randint(0, max_order - s)
    return r, s


@criterion("sylvester-invariance")
def test_sylvester_invariance():
    rng = random.Random(2001)
    for _ in range(CASES):
        n = rng.randint(1, 8)
        g = rand_symmetric(rng, n)
        q = unimodular(rng, n)
        _, d1 = congruence_diagonalize(g)
        _, d2 = congruence_diagonalize(q.T @ g @ q)
        assert counts(d1) == counts(d2)


@criterion("cometric-signature")
def test_cometric_signature():
    rng = random.Random(2002)
    for _ in range(CASES):
        n = rng.randint(1, 8)
        space = rand_space(rng, n)
        r, s, t = signature(space)
        m = n - r
        # independent route: the pairing matrix of the flats of any vectors
        # spanning a complement of the radical
        while True:
            us = [rand_vector(rng, n) for _ in range(m)]
            flats = [flat(space, u).components for u in us]
            if m == 0 or rank(Matrix.from_rows(flats)) == m:
                break
        pairing = Matrix.from_rows([[inner(space, a, b) for b in us] for a in us]) if m else Matrix.zero(0, 0)
        _, d = congruence_diagonalize(pairing)
        assert counts(d) == (0, s, t)


@criterion("dual-bases-theorem")
def test_dual_bases_theorem():
    rng = random.Random(2003)
    for _ in range(CASES):
        n = rng.randint(1, 8)
        space = rand_space(rng, n)
        rb = random_radical_basis(rng, space) if rng.random() < 0.5 else None
        from degtensor import orthogonal_radical_basis

        basis = rb if rb is not None else orthogonal_radical_basis(space)
        duals = dual_basis(basis)
        alphas = basis.alphas()
        r = basis.radical_count
        # one metric solve per dual covector, then pair by evaluation
        preimages = []
        for a in range(r, n):
            u = solve(space.gram, duals[a].components)
            assert u is not None
            preimages.append(u)
        for a in range(r, n):
            for b in range(r, n):
                value = duals[b](preimages[a - r])
                expected = 1 / alphas[a] if a == b else F(0)
                assert value == expected


@criterion("covariant-trace-of-metric-is-rank")
def test_metric_self_trace_is_rank():
    rng = random.Random(2004)
    for _ in range(CASES):
        n = rng.randint(1, 8)
        space = rand_space(rng, n)
        value = contract_covariant(gram_tensor(space), 1, 2).components[0]
        assert value == rank(space.gram)


@criterion("lowered-pair-traces-to-inner-product")
def test_lowered_pair_traces_to_inner_product():
    rng = random.Random(2005)
    for _ in range(CASES):
        n = rng.randint(1, 8)
        space = rand_space(rng, n)
        v = rand_vector(rng, n)
        w = rand_vector(rng, n)
        t = tensor_product(from_covector(flat(space, v)), from_covector(flat(space, w)))
        assert contract_covariant(t, 1, 2).components[0] == inner(space, v, w)


@criterion("contraction-triple-agreement")
def test_contraction_triple_agreement():
    rng = random.Random(2006)
    for _ in range(CASES):
        n = rng.randint(1, 8)
        space = rand_space(rng, n)
        r, s = pick_gated_type(rng, n)
        k = rng.randint(1, s - 1)
        l = rng.randint(k + 1, s)
        t = gated_tensor(rng, space, r, s, k, l)
        assert is_radannih_slot(t, k) and is_radannih_slot(t, l)
        via_gstar = contract_covariant(t, k, l, random_screen(rng, space))
        via_trace = oracle_covariant_trace(t, k, l, random_radical_basis(rng, space))
        b = unimodular(rng, n)
        via_moved = contract_covariant(change_basis(t, b), k, l)
        assert via_gstar.components == via_trace.components
        assert change_basis(via_gstar, b).components == via_moved.components


@criterion("gate-soundness-negative-control")
def test_gate_soundness_negative_control():
    rng = random.Random(2007)
    screen_dependent = 0
    for _ in range(CASES):
        n = rng.randint(2, 8)
        space = rand_space(rng, n, rad=rng.randint(1, n - 1))
        omega = nonzero_annih_covector(rng, space)
        tau = outside_flat_image(rng, space)
        t = tensor_product(from_covector(omega), from_covector(tau))
        assert not is_radannih_slot(t, 2)
        sd1, sd2 = random_screen(rng, space), random_screen(rng, space)
        raw1 = _form_contract_axes(t.components, n, 2, 0, 1, extend_cometric(space, sd1))
        raw2 = _form_contract_axes(t.components, n, 2, 0, 1, extend_cometric(space, sd2))
        if raw1 != raw2:
            screen_dependent += 1
        for sd in (sd1, sd2):
            try:
                contract_covariant(t, 1, 2, sd)
            except NotRadicalAnnihilator as err:
                assert err.slot == 2
            else:
                raise AssertionError("gate failed to refuse a screen-dependent contraction")
    assert screen_dependent >= 1


@criterion("lowering-kernel-characterization")
def test_lowering_kernel_characterization():
    rng = random.Random(2008)
    for _ in range(CASES):
        n = rng.randint(1, 8)
        max_order = 4 if n <= 3 else (3 if n <= 5 else 2)
        r = rng.randint(1, max_order - 1)
        s = rng.randint(0, max_order - 1 - r)
        k = rng.randint(1, r)
        space = rand_space(rng, n)
        t_rad = radical_slot_tensor(rng, space, r, s, k)
        assert is_radical_slot(t_rad, k)
        assert lower_index(t_rad, k).is_zero()

        space2 = rand_space(rng, n, rad=rng.randint(0, n - 1))
        t_non = nonradical_slot_tensor(rng, space2, r, s, k)
        assert not is_radical_slot(t_non, k)
        assert not lower_index(t_non, k).is_zero()


@criterion("two-path-contraction-remark")
def test_two_path_contraction_remark():
    rng = random.Random(2009)
    done = 0
    while done < CASES:
        n = rng.randint(2, 8)
        space = rand_space(rng, n, rad=rng.randint(1, n - 1))
        w = nonzero_radical_vector(rng, space)
        tau = outside_flat_image(rng, space)
        if tau(w) == 0:
            continue
        v = rand_vector(rng, n)
        omega = annih_covector(rng, space)
        t = tensor_product(from_vector(space, v), from_covector(omega)) + tensor_product(
            from_vector(space, w), from_covector(tau)
        )
        direct = contract_mixed(t, 1, 1).components[0]
        gated = contract_covariant(lower_index(t, 1), 1, 2).components[0]
        assert direct - gated == tau(w)
        assert tau(w) != 0
        done += 1


@criterion("cli-analyze-golden-report")
def test_cli_analyze_golden_report(capsys):
    code = main(["analyze", str(FIXTURES / "space_diag.json")])
    out = capsys.readouterr().out
    assert code == 0
    golden = (FIXTURES / "analyze_golden.txt").read_bytes()
    assert out.encode("utf-8") == golden
    assert "cometric[2]: -1\ncometric[3]: 1/2\n" in out
