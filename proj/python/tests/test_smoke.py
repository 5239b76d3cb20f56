"""End-to-end smoke tests for the compiled module."""

import json

import maccfd


def default_params():
    return maccfd.SystemParams()


def test_defaults_and_variances():
    p = default_params()
    assert p.transmit_power == 100.0
    assert p.noise_power == 1e-8
    assert p.num_si_paths == 5
    assert p.num_soi_paths == 10
    assert p.si_path_variance() == 2e-10
    # beta * d^-alpha / L, with beta=1e-3, d=100, alpha=2.8, L=10
    assert abs(p.soi_path_variance() - 2.5118864315095825e-10) < 1e-24


def test_geometry_is_seeded():
    p = default_params()
    a = maccfd.sample_geometry(7, p)
    b = maccfd.sample_geometry(7, p)
    c = maccfd.sample_geometry(8, p)
    assert a == b
    assert not (a == c)
    assert a.seed == 7


def test_fitness_positive_and_deterministic():
    p = default_params()
    chan = maccfd.sample_geometry(123, p)
    layout = maccfd.AntennaLayout()
    f1 = maccfd.min_rate_fitness(layout, chan, p)
    f2 = maccfd.min_rate_fitness(layout, chan, p)
    assert f1 == f2
    assert f1 > 0.0
    g = maccfd.link_gains(layout, chan)
    assert g.si_aa > 0.0 and g.soi_ab > 0.0


def test_ppso_beats_fixed_positions():
    p = default_params()
    chan = maccfd.sample_geometry(42, p)
    cfg = maccfd.PpsoConfig()
    cfg.num_particles = 40
    cfg.num_iterations = 25
    cfg.seed = 9
    res = maccfd.run_ppso(chan, p, cfg)
    fpa = maccfd.run_fpa(chan, p)
    assert res.best_fitness >= fpa.fitness
    assert len(res.trace.global_best) == cfg.num_iterations + 1
    assert res.trace.evaluation_count == cfg.num_particles * (cfg.num_iterations + 1)
    # monotone global best
    gb = res.trace.global_best
    assert all(gb[i] <= gb[i + 1] + 1e-15 for i in range(len(gb) - 1))


def test_antenna_selection_degenerates_below_half_wavelength():
    p = default_params()
    p.region_size_d = 0.4
    chan = maccfd.sample_geometry(5, p)
    a = maccfd.run_antenna_selection(chan, p)
    f = maccfd.run_fpa(chan, p)
    assert a.fitness == f.fitness


def test_run_experiment_json_header_and_determinism():
    config = {
        "system": {"region_size_d": 1.0},
        "ppso": {"num_particles": 20, "num_iterations": 10},
        "schemes": [
            {"scheme": "MA-PPSO", "mode": "CCFD"},
            {"scheme": "FPA", "mode": "CCFD"},
        ],
        "num_realizations": 2,
        "master_seed": 11,
    }
    text = json.dumps(config)
    out1 = maccfd.run_experiment_json(text, 1)
    out2 = maccfd.run_experiment_json(text, 4)
    assert out1["results_csv"] == out2["results_csv"]
    header = out1["results_csv"].splitlines()[0]
    assert header == (
        "sweep_var,sweep_value,scheme,mode,realization,fitness,"
        "si_gain_aa,si_gain_bb,soi_gain_ab,soi_gain_ba,evaluations,seed"
    )
    # canonical config round-trips through the parser
    canon = maccfd.canonical_config(text)
    assert maccfd.canonical_config(canon) == canon


def test_plot_rendering():
    config = {
        "schemes": [{"scheme": "FPA", "mode": "CCFD"}, {"scheme": "FPA", "mode": "HD"}],
        "sweep": {"variable": "region_size", "values": [0.5, 1.0, 2.0]},
        "num_realizations": 2,
        "master_seed": 3,
    }
    out = maccfd.run_experiment_json(json.dumps(config), 0)
    svg = maccfd.render_plot_svg(out["aggregates_csv"], "rate_vs_d")
    assert svg.startswith("<svg")
    assert "polyline" in svg
