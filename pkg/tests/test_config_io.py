import json

import pytest

from ris_scma.campaign import run_campaign
from ris_scma.config import (ConfigError, campaign_from_config, config_hash,
                             parse_config, serialize_config)
from ris_scma.writers import (emit_plot_data, result_from_json_text,
                              result_to_json_text, write_results)


def test_empty_document_gives_reference_defaults():
    cfg = parse_config("")
    assert cfg.system.num_users == 6
    assert cfg.system.num_ores == 4
    assert cfg.system.nonzero_per_ore == 3
    assert cfg.system.nonzero_per_user == 2
    assert cfg.system.codebook_size == 2
    assert cfg.phase_bits == 3
    assert cfg.num_iterations == 3
    assert cfg.geometry.bs_user_distance == 40.0
    assert cfg.geometry.ris_perpendicular_offset == 1.5
    assert cfg.geometry.ris_horizontal_offset == 2.0
    assert cfg.geometry.carrier_frequency == 2.4e9
    assert cfg.fading.rician_factor == 1.0
    assert cfg.num_trials == 10_000


def test_whitespace_document_equals_empty():
    assert parse_config("  \n\t ") == parse_config("")


def test_unknown_keys_rejected_by_name():
    with pytest.raises(ConfigError, match="'phase_bitz'"):
        parse_config('{"phase_bitz": 3}')
    with pytest.raises(ConfigError, match="'geometry.altitude'"):
        parse_config('{"geometry": {"altitude": 10}}')


def test_domain_violations_name_the_field():
    with pytest.raises(ConfigError, match="phase_bits"):
        parse_config('{"phase_bits": 0}')
    with pytest.raises(ConfigError, match="ris_horizontal_offset"):
        parse_config('{"geometry": {"ris_horizontal_offset": 45.0}}')
    with pytest.raises(ConfigError, match="rician_factor"):
        parse_config('{"fading": {"rician_factor": -2}}')
    with pytest.raises(ConfigError, match="scenario"):
        parse_config('{"scenario": "volume_sweep"}')


def test_parse_error_reports_line():
    with pytest.raises(ConfigError, match="line 2"):
        parse_config('{\n  "scenario": oops\n}')


def test_round_trip_identity():
    texts = ["", '{"scenario": "bits_sweep", "num_trials": 17}',
             '{"scenario": "deploy_sweep", "fading": {"rician_factor": 2.5}}']
    for text in texts:
        cfg = parse_config(text)
        again = parse_config(serialize_config(cfg))
        assert again == cfg
        assert config_hash(again) == config_hash(cfg)


def test_axis_grid_validation():
    with pytest.raises(ConfigError, match="sweep.axis"):
        parse_config('{"scenario": "n_sweep", "sweep": {"axis": "phase_bits"}}')
    with pytest.raises(ConfigError, match="integers"):
        parse_config('{"scenario": "n_sweep", "sweep": {"grid": [4.5, 8]}}')
    cfg = parse_config('{"scenario": "complexity_grid", '
                       '"sweep": {"axis": "phase_bits", "grid": [1, 2, 3]}}')
    assert cfg.algorithms == ("ao", "lc_ao")


@pytest.fixture(scope="module")
def small_result():
    cfg = parse_config(json.dumps({
        "scenario": "n_sweep", "sweep": {"grid": [2, 4]}, "num_trials": 30,
        "num_elements": 4, "algorithms": ["blind", "ao"]}))
    return run_campaign(campaign_from_config(cfg), config_hash=config_hash(cfg))


def test_write_results_byte_stable(small_result, tmp_path):
    first = write_results(small_result, tmp_path / "a")
    second = write_results(small_result, tmp_path / "b")
    for p1, p2 in zip(first, second):
        assert p1.read_bytes() == p2.read_bytes()


def test_csv_axis_ascending(small_result, tmp_path):
    (csv_path, _) = write_results(small_result, tmp_path)
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "axis_value,algorithm,mean_snr_db,stderr_db,real_adds,real_mults,trials"
    axis = [float(line.split(",")[0]) for line in lines[1:]]
    assert axis == sorted(axis)


def test_json_reingest_equals_memory(small_result):
    text = result_to_json_text(small_result)
    assert result_from_json_text(text) == small_result


def test_config_hash_recorded(small_result):
    assert len(small_result.config_hash) == 64


def test_emit_plot_data_series(small_result, tmp_path):
    paths = emit_plot_data(small_result, "fig5b", tmp_path)
    names = sorted(p.name for p in paths)
    assert names == ["fig5b_ao.csv", "fig5b_blind.csv"]
    header = paths[0].read_text().splitlines()[0]
    assert header == "num_elements,mean_snr_db,stderr_db"


def test_emit_plot_data_scenario_mismatch(small_result, tmp_path):
    with pytest.raises(ValueError, match="deploy_sweep"):
        emit_plot_data(small_result, "fig2", tmp_path)
    with pytest.raises(ValueError, match="unknown figure"):
        emit_plot_data(small_result, "fig9", tmp_path)


def test_emit_plot_data_complexity_axes(tmp_path):
    cfg = parse_config('{"scenario": "complexity_grid", '
                       '"sweep": {"axis": "num_elements", "grid": [4, 8]}}')
    result = run_campaign(campaign_from_config(cfg))
    paths = emit_plot_data(result, "fig6a", tmp_path)
    body = paths[0].read_text().splitlines()
    assert body[0] == "num_elements,real_adds,real_mults"
    with pytest.raises(ValueError, match="fig6b sweeps"):
        emit_plot_data(result, "fig6b", tmp_path)


def test_emit_plot_data_no_algorithms(small_result, tmp_path):
    from dataclasses import replace
    empty = replace(small_result, algorithms=(), rows=())
    with pytest.raises(ValueError, match="no algorithm"):
        emit_plot_data(empty, "fig5b", tmp_path)


def test_complexity_grid_rows_have_empty_snr(tmp_path):
    cfg = parse_config('{"scenario": "complexity_grid", "sweep": {"grid": [4, 8]}}')
    result = run_campaign(campaign_from_config(cfg))
    assert all(r.mean_snr_db is None for r in result.rows)
    csv_path, json_path = write_results(result, tmp_path)
    line = csv_path.read_text().splitlines()[1]
    assert line.split(",")[2] == ""   # empty SNR cell
    assert result_from_json_text(json_path.read_text()) == result
