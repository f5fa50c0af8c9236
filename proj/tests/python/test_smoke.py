"""End-to-end smoke tests for the pywncs extension module.

These are not exhaustive (the C++ doctest suites cover behavior); they
check that the bindings expose the documented surface, that values agree
with the native library, and that a small simulation runs and balances.
"""

import math

import pytest

import pywncs


def test_bessel_j0_basics():
    assert pywncs.bessel_j0(0.0) == 1.0
    # J0 is even and bounded by 1.
    assert pywncs.bessel_j0(1.7) == pytest.approx(pywncs.bessel_j0(-1.7), abs=1e-15)
    assert abs(pywncs.bessel_j0(5.3)) < 1.0


def test_marcum_q1_identities():
    assert pywncs.marcum_q1(0.7, 0.0) == 1.0
    for b in (0.5, 1.0, 2.0):
        assert pywncs.marcum_q1(0.0, b) == pytest.approx(math.exp(-b * b / 2), rel=1e-12)
    with pytest.raises(pywncs.DomainError):
        pywncs.marcum_q1(-1.0, 2.0)


def test_rayleigh_expect_closed_form():
    # E[exp(-c*gamma)] over Exponential(mean g) is 1/(1 + c*g).
    got = pywncs.rayleigh_expect(lambda g: math.exp(-0.3 * g), 2.0)
    assert got == pytest.approx(1.0 / (1.0 + 0.3 * 2.0), rel=1e-7)


def test_radio_defaults_and_exceptions():
    radio = pywncs.RadioConfig()
    assert radio.noise_dbm() == pytest.approx(-105.53871964321762, abs=1e-9)
    assert pywncs.mean_snr(radio, 100.0) == pytest.approx(509.370337499442, rel=1e-12)
    assert pywncs.fading_correlation(radio.doppler_hz, radio.sample_time_s) == pytest.approx(
        0.98904869522372584, abs=1e-13
    )
    with pytest.raises(pywncs.DomainError):
        pywncs.mean_snr(radio, float("nan"))


def test_stability_surface():
    rho = 0.98904869522372584
    assert pywncs.p_back_to_back(1e-3, 0.0) == pytest.approx(1e-3, rel=1e-6)
    assert pywncs.p_back_to_back(1e-3, rho) == pytest.approx(4.392103870787753e-2, rel=1e-9)
    # Loss streak already at the edge: one more slip trips instability.
    assert pywncs.p_instability(0.37, rho, 10, 9) == 0.37
    assert pywncs.solve_pe_threshold(rho, 10, 9, 1e-9) == 1e-9
    assert pywncs.solve_pe_threshold(rho, 10, 0, 1e-9) == pytest.approx(
        4.821357829e-3, rel=1e-5
    )
    # The uncorrected conditional is available behind the form switch.
    printed = pywncs.p_back_to_back(1e-3, 0.0, form="as_printed")
    assert printed == pytest.approx(1.0 - 1e-3, rel=1e-6)
    with pytest.raises(ValueError):
        pywncs.p_back_to_back(1e-3, rho, form="bogus")


def test_link_adaptation_surface():
    cat = pywncs.default_catalogue()
    assert len(cat) == 9
    effs = [e.spectral_efficiency() for e in cat]
    assert effs == sorted(effs)
    qpsk13 = cat[0]
    assert qpsk13.modulation_order == 4
    assert pywncs.rb_needed(600, qpsk13) == 11
    assert pywncs.rb_needed(600, cat[-1]) == 2
    # Very clean channel picks the top entry; hopeless channel picks none.
    assert pywncs.select_mcs_index(cat, 1e8, 1e-3) == 8
    assert pywncs.select_mcs_index(cat, 1e-6, 1e-3) == -1
    assert 0.0 <= pywncs.bler_at(qpsk13, 3.0) <= 1.0
    e = pywncs.expected_bler(qpsk13, 10.0)
    assert 0.0 < e < 1.0


def test_control_error_is_planar_distance():
    a = pywncs.Pose()
    b = pywncs.Pose()
    b.x, b.y, b.heading = 3.0, 4.0, 2.0
    assert pywncs.control_error(a, b) == pytest.approx(5.0, abs=1e-15)


def test_config_round_trip():
    cfg = pywncs.SimConfig()
    cfg.policy = "maxsnr"
    cfg.total_ticks = 123
    text = pywncs.render_config(cfg)
    back = pywncs.parse_config_text(text)
    assert back.policy == "maxsnr"
    assert back.total_ticks == 123
    assert pywncs.render_config(back) == text
    with pytest.raises(pywncs.ConfigError):
        pywncs.parse_config_text("no_such_key = 1\n")


def _desk_config(policy):
    cfg = pywncs.SimConfig()
    cfg.total_ticks = 400
    cfg.arrival_rate = 0.02
    cfg.service_rate = 5e-3
    cfg.cell_radius_m = 10.0
    cfg.seed = 11
    cfg.policy = policy
    return cfg


@pytest.mark.parametrize("policy", ["instability", "maxsnr", "error"])
def test_run_single_balances(policy):
    out = pywncs.run_single(_desk_config(policy))
    assert out["arrived"] == out["successful"] + out["unstable"] + out["active_at_end"]
    assert 0.0 <= out["mean_ru_pct"] <= 100.0
    assert out["arrived"] > 0


def test_run_single_deterministic():
    first = pywncs.run_single(_desk_config("instability"))
    second = pywncs.run_single(_desk_config("instability"))
    assert first == second


def test_run_single_rejects_bad_config():
    cfg = _desk_config("instability")
    cfg.total_rb = -1
    with pytest.raises(pywncs.ConfigError):
        pywncs.run_single(cfg)
