import pytest

from rankpum.simulate import (TABLE3_EXPECTED, ConfigError, SimulationConfig, cmd_simulate,
                              cmd_table3, records_csv, simulate, table3_run)


def test_config_parsing():
    cfg = SimulationConfig.from_text("# comment\nq = 2\nN=3  # inline\nbaseline = yes\n"
                                     "modulus = 11d\nlevel = packet\n")
    assert (cfg.q, cfg.N, cfg.baseline, cfg.modulus, cfg.level) == (2, 3, True, 0x11D, "packet")


@pytest.mark.parametrize("text", ["foo = 1", "N", "N = x", "baseline = maybe"])
def test_config_rejects(text):
    with pytest.raises(ConfigError):
        SimulationConfig.from_text(text)


@pytest.mark.parametrize("kw", [dict(level="wire"), dict(condition="soft"), dict(N=0),
                                dict(k1=5), dict(affine=True), dict(t_max=-1), dict(n=9)])
def test_config_build_rejects(kw):
    cfg = SimulationConfig(**kw)
    with pytest.raises(ConfigError):
        cfg.build()


def test_csv_schema():
    cfg = SimulationConfig(N=3, trials=5, seed=4, baseline=True)
    text = records_csv(cfg, simulate(cfg))
    lines = text.splitlines()
    assert lines[0].startswith("# rankpum-simulation schema=1 ")
    assert lines[1] == ("trial,seed,t,rho,gamma,brd,recovered,baseline_recovered,"
                        "step1,step2,step3,bmd_calls")
    rows = lines[2:-1]
    assert len(rows) == 5
    for i, row in enumerate(rows):
        f = row.split(",")
        assert len(f) == 12
        assert f[0] == str(i) and f[1] == "4:%d" % i
        assert len(f[2].split("/")) == 4
        assert len(f[8]) == len(f[9]) == len(f[10]) == 4
        assert f[7] in ("0", "1")
    assert lines[-1].startswith("# trials=5 pum_failures=")


def test_simulation_is_deterministic():
    cfg = SimulationConfig(N=3, trials=6, seed=11)
    assert cmd_simulate(cfg) == cmd_simulate(cfg)
    other = SimulationConfig(N=3, trials=6, seed=12)
    assert cmd_simulate(cfg) != cmd_simulate(other)


def test_single_trial_replays_from_seed():
    a = simulate(SimulationConfig(N=3, trials=4, seed=7))
    b = simulate(SimulationConfig(N=3, trials=2, seed=7))
    assert [(r.counts, r.steps) for r in a[:2]] == [(r.counts, r.steps) for r in b]


def test_conditioned_trials_all_recover():
    recs = simulate(SimulationConfig(N=4, trials=40, seed=1, condition="brd",
                                     t_max=2, rho_max=2, gamma_max=2))
    assert all(r.brd and r.recovered for r in recs)


@pytest.mark.parametrize("affine", [False, True])
def test_packet_level_conditioned(affine):
    recs = simulate(SimulationConfig(N=3, trials=10, seed=2, level="packet", condition="brd",
                                     affine=affine))
    assert all(r.recovered for r in recs)


def test_table3_marks():
    run = table3_run()
    assert run["marks"] == TABLE3_EXPECTED
    assert run["recovered"]


def test_table3_render():
    text = cmd_table3(trace=True)
    assert "sequence recovered: yes" in text
    assert "depth=0 step=1" in text
