#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""命令行入口的端到端测试：退出码、报告内容与输出文件"""

import json
import os

import pytest

from halfgrids.__main__ import main
from halfgrids.utils.constants import (
    CERTIFICATE_FILE, CONSTRUCTION_REPORT_FILE, EXIT_INPUT_ERROR, EXIT_MISMATCH, EXIT_OK,
    MANIFEST_FILE
)
from halfgrids.utils.file_utils import sha256_file


@pytest.fixture(scope="module")
def full_m4(tmp_path_factory):
    """standard 4 Full 写出的配置文件"""
    folder = tmp_path_factory.mktemp("standard")
    assert main(['standard', '4', 'Full', '--emit', str(folder), '-q']) == EXIT_OK
    return folder / 'standard_m4_Full.json'


def test_table3_external_lines(capsys):
    assert main(['tables', '3', '-q']) == EXIT_OK
    out = capsys.readouterr().out
    for ideal in ("(y+z,x-w)", "(y-z,x+w)", "(y+2z-w,x+z-w)"):
        assert ideal in out


def test_tables_one_and_two(capsys):
    assert main(['tables', '1', '2', '-q']) == EXIT_OK
    assert "(2,1,4,3)" in capsys.readouterr().out


def test_unknown_table_is_input_error():
    assert main(['tables', '4', '-q']) == EXIT_INPUT_ERROR


def test_admissible_harmonic(capsys):
    assert main(['admissible', '-1', '-q']) == EXIT_OK
    out = capsys.readouterr().out
    assert "可容许集合: {(2,1,4,3) (3,4,2,1) (4,3,1,2)}" in out


@pytest.mark.parametrize("q", ["5", "anharmonic", "1/3"])
def test_admissible_empty(capsys, q):
    assert main(['admissible', q, '-q']) == EXIT_OK
    assert "没有可容许的置换集合" in capsys.readouterr().out


def test_admissible_degenerate_q():
    assert main(['admissible', '1', '-q']) == EXIT_INPUT_ERROR
    assert main(['admissible', 'abc', '-q']) == EXIT_INPUT_ERROR


def test_construct_single_row_json(capsys):
    assert main(['construct', '1', '--format', 'json', '-q']) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    (result,) = data['results']
    assert result['L'] == "(y+z,x-w)"
    assert len(result['R']) == 4 and len(result['P4']) == 4
    assert result['L4'] == "(x+y,z+w)"


def test_construct_all_writes_manifest(tmp_path):
    assert main(['construct', 'all', '--skip-equivalence', '--emit', str(tmp_path), '-q']) == EXIT_OK
    manifest = json.loads((tmp_path / MANIFEST_FILE).read_text(encoding='utf-8'))
    assert manifest['command'] == 'construct'
    assert set(manifest['digests']) == {CONSTRUCTION_REPORT_FILE, 'pair_1_2.json',
                                        'pair_3_5.json', 'pair_4_6.json'}
    for name, digest in manifest['digests'].items():
        assert sha256_file(os.path.join(tmp_path, name)) == digest
    report = json.loads((tmp_path / CONSTRUCTION_REPORT_FILE).read_text(encoding='utf-8'))
    assert report['pairing'] == [[1, 2], [3, 5], [4, 6]]


def test_detect_and_verify_full_variant(full_m4, tmp_path):
    assert main(['detect', str(full_m4), '4', '6', '-q']) == EXIT_OK
    assert main(['verify', str(full_m4), '4', '6', '--trials', '1', '--emit', str(tmp_path), '-q']) == EXIT_OK
    cert = str(tmp_path / CERTIFICATE_FILE)
    assert main(['verify-cert', cert, '-q']) == EXIT_OK
    assert main(['verify-cert', cert, '--config', str(full_m4), '-q']) == EXIT_OK


def test_wrong_degrees_are_rejected(full_m4):
    """24 个点的像不在任何三次曲线上"""
    assert main(['verify', str(full_m4), '3', '8', '--trials', '1', '-q']) == EXIT_MISMATCH


def test_point_count_mismatch_is_input_error(full_m4):
    assert main(['detect', str(full_m4), '4', '5', '-q']) == EXIT_INPUT_ERROR


def test_truncated_json_is_input_error(full_m4, tmp_path):
    broken = tmp_path / 'broken.json'
    broken.write_text(full_m4.read_text(encoding='utf-8')[:200], encoding='utf-8')
    assert main(['detect', str(broken), '4', '6', '-q']) == EXIT_INPUT_ERROR


def test_bad_arguments_are_input_errors():
    assert main(['tables', '3', '--conductor', '6', '-q']) == EXIT_INPUT_ERROR
    assert main(['verify', 'x.json', '4', '6', '--trials', '0', '-q']) == EXIT_INPUT_ERROR
    assert main(['no-such-command']) == EXIT_INPUT_ERROR


def test_concurrency_command(capsys):
    assert main(['concurrency', '3', '5', '--format', 'json', '-q']) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)['rows']
    assert [(row['m'], row['count']) for row in rows] == [(3, 2), (4, 2), (5, 2)]


def test_concurrency_text_lists_points(capsys):
    assert main(['concurrency', '3', '4', '--format', 'json', '-q']) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)['rows']
    assert main(['concurrency', '3', '4', '-q']) == EXIT_OK
    out = capsys.readouterr().out
    assert '同时点' in out
    for row in rows:
        assert len(row['points']) == 2
        for point in row['points']:
            assert point in out


def test_json_output_is_deterministic(capsys):
    outputs = []
    for _ in range(2):
        assert main(['tables', '3', '--format', 'json', '-q']) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


@pytest.mark.slow
def test_equivalence_with_f4_model(full_m4, tmp_path, capsys):
    assert main(['f4', '--emit', str(tmp_path), '-q']) == EXIT_OK
    capsys.readouterr()
    assert main(['equiv', str(full_m4), str(tmp_path / 'f4.json'), '--format', 'json', '-q']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['equivalent'] is True
