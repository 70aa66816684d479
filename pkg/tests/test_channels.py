import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lquprotect.channels import (KrausChannel, amplitude_damping, apply_product, gad_qubit,
                                 gad_qutrit_v, identity_channel, product_superoperator,
                                 validate_cptp)
from lquprotect.errors import DimensionMismatch, ExcitationBudgetExceeded, ParamOutOfRange
from lquprotect.lqu import lqu_closed_form
from lquprotect.scenarios import table1_scenarios
from lquprotect.states import bell_qubit, maximally_mixed, random_density_matrix

from conftest import seeds, state_from_seed

unit = st.floats(min_value=0.0, max_value=1.0)


def double_sum(ch_a, ch_b, rho):
    # literal sum over all Kraus pairs, the reference for apply_product
    out = np.zeros_like(rho.matrix)
    for e in ch_a.kraus_ops:
        for f in ch_b.kraus_ops:
            k = np.kron(e, f)
            out += k @ rho.matrix @ k.conj().T
    return out


def test_gad_qubit_operators():
    ch = gad_qubit(0.3, 0.6)
    e0, e1, e2, e3 = ch.kraus_ops
    assert np.allclose(e0, np.sqrt(0.3) * np.diag([1, np.sqrt(0.4)]))
    assert e1[0, 1] == pytest.approx(np.sqrt(0.3 * 0.6))
    assert np.allclose(e2, np.sqrt(0.7) * np.diag([np.sqrt(0.4), 1]))
    assert e3[1, 0] == pytest.approx(np.sqrt(0.7 * 0.6))


def test_gad_at_r1_is_amplitude_damping(rng):
    ch = gad_qubit(1.0, 0.37)
    assert not np.any(ch.kraus_ops[2]) and not np.any(ch.kraus_ops[3])
    ad = amplitude_damping(0.37)
    rho = random_density_matrix(2, 1, rng).matrix
    assert np.array_equal(ch.apply(rho), ad.apply(rho))


def test_gad_zero_p_is_identity(rng):
    rho = random_density_matrix(2, 1, rng).matrix
    assert np.allclose(gad_qubit(0.3, 0.0).apply(rho), rho, atol=1e-15)


def test_full_decay():
    out = gad_qubit(1.0, 1.0).apply(np.diag([0.0, 1.0]))
    assert np.allclose(out, np.diag([1.0, 0.0]))


def test_gad_parameter_checks():
    with pytest.raises(ParamOutOfRange):
        gad_qubit(1.2, 0.1)
    with pytest.raises(ParamOutOfRange):
        gad_qubit(0.5, -0.1)
    with pytest.raises(ExcitationBudgetExceeded):
        gad_qutrit_v(0.5, 0.6, 0.5)
    with pytest.raises(ParamOutOfRange):
        gad_qutrit_v(0.5, -0.1, 0.5)


def test_qutrit_zero_probabilities_identity(rng):
    rho = random_density_matrix(3, 1, rng).matrix
    assert np.allclose(gad_qutrit_v(0.4, 0.0, 0.0).apply(rho), rho, atol=1e-15)


def test_qutrit_only_level_one_decays():
    ch = gad_qutrit_v(1.0, 1.0, 0.0)
    assert np.allclose(ch.apply(np.diag([0.0, 1.0, 0.0])), np.diag([1.0, 0.0, 0.0]))
    assert np.allclose(ch.apply(np.diag([0.0, 0.0, 1.0])), np.diag([0.0, 0.0, 1.0]))


def test_qutrit_completeness_hand_value():
    # r-branch diagonal (1, 1-p1, 1-p2) + (p1, p2 on |0>) = r I; same for 1 - r
    e = gad_qutrit_v(0.5, 0.1, 0.4).stacked
    total = sum(k.conj().T @ k for k in e)
    assert np.max(np.abs(total - np.eye(3))) < 1e-12


def test_validate_cptp():
    assert validate_cptp(gad_qubit(0.3, 0.7)).ok
    assert validate_cptp(gad_qutrit_v(0.5, 0.1, 0.4)).ok
    rep = validate_cptp(KrausChannel(2, (np.diag([1.0, 0.5]),), "filter"))
    assert not rep.ok
    assert rep.deviation == pytest.approx(0.75)


def test_apply_product_examples():
    rho = bell_qubit()
    same = apply_product(identity_channel(2), identity_channel(2), rho)
    assert np.allclose(same.matrix, rho.matrix, atol=1e-15)
    full = apply_product(gad_qubit(1, 1), gad_qubit(1, 1), rho)
    assert np.allclose(full.matrix, np.diag([1.0, 0, 0, 0]), atol=1e-15)
    ch = gad_qubit(0.5, 0.5)
    assert lqu_closed_form(apply_product(ch, ch, rho)).value == pytest.approx(0.134, abs=1e-3)


def test_apply_product_dimension_check():
    with pytest.raises(DimensionMismatch):
        apply_product(gad_qutrit_v(0.5, 0.1, 0.1), gad_qubit(0.5, 0.5), bell_qubit())


@given(seeds, unit, unit, unit, unit)
@settings(max_examples=40, deadline=None)
def test_apply_product_matches_double_sum(seed, r1, p1, r2, p2):
    rho = state_from_seed(seed, 2, 2)
    a, b = gad_qubit(r1, p1), gad_qubit(r2, p2)
    out = apply_product(a, b, rho)
    assert np.allclose(out.matrix, double_sum(a, b, rho), atol=1e-14)
    s = product_superoperator(a, b)
    assert np.allclose((s @ rho.matrix.ravel()).reshape(4, 4), out.matrix, atol=1e-14)


def test_mixed_dimension_product(rng):
    rho = random_density_matrix(2, 3, rng)
    a, b = gad_qubit(0.2, 0.7), gad_qutrit_v(0.6, 0.3, 0.5)
    assert np.allclose(apply_product(a, b, rho).matrix, double_sum(a, b, rho), atol=1e-14)


@given(seeds, unit, unit, unit, st.floats(0.0, 1.0))
@settings(max_examples=60, deadline=None)
def test_trace_and_positivity_preserved(seed, r, p1, frac, p):
    p2 = (1 - p1) * frac
    rho = state_from_seed(seed, 3, 2)
    out = apply_product(gad_qutrit_v(r, p1, p2), gad_qubit(r, p), rho)
    assert abs(np.trace(out.matrix) - 1) < 1e-10
    assert np.linalg.eigvalsh(out.matrix)[0] >= -1e-9


@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 0.9, 1.0])
def test_half_temperature_fixes_maximally_mixed(p):
    ch = gad_qubit(0.5, p)
    assert np.allclose(ch.apply(np.eye(2) / 2), np.eye(2) / 2, atol=1e-10)
    out = apply_product(ch, ch, maximally_mixed(2, 2))
    assert np.allclose(out.matrix, np.eye(4) / 4, atol=1e-10)


def test_amplitude_damping_semigroup(rng):
    p, q = 0.3, 0.45
    pops = rng.random(2)
    rho = np.diag(pops / pops.sum())
    two = gad_qubit(1.0, q).apply(gad_qubit(1.0, p).apply(rho))
    one = gad_qubit(1.0, 1 - (1 - p) * (1 - q)).apply(rho)
    assert np.allclose(np.diag(two), np.diag(one), atol=1e-14)


@pytest.mark.parametrize("scenario", table1_scenarios(), ids=lambda s: s.key)
def test_lqu_contracts_under_paper_channels(scenario):
    cfg = scenario.config
    before = lqu_closed_form(cfg.initial_state).value
    after = lqu_closed_form(apply_product(cfg.channel_a, cfg.channel_b, cfg.initial_state)).value
    assert after <= before + 1e-9


def test_channel_json_round_trip():
    ch = gad_qutrit_v(0.5, 0.1, 0.4)
    back = KrausChannel.from_json(ch.to_json())
    assert back.dim == 3 and back.label == ch.label
    assert all(np.array_equal(a, b) for a, b in zip(ch.kraus_ops, back.kraus_ops))
