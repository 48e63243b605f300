import json

import pytest
import yaml

from gradalg import serialization as ser
from gradalg.cli import main
from gradalg.config import PACKAGE_ROOT
from gradalg.groups import quaternion_extension

DIHEDRAL_PHI = '{"E": [[0, 1], [1, 0]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding='utf-8')
    return str(path)


def test_schur_inline_group(capsys):
    code, out = run(capsys, 'schur', '--group', '{"invariant_factors": [2, 2]}')
    assert code == 0
    assert json.loads(out) == {"multiplier": {"invariant_factors": [2]}}


def test_schema_errors_exit_with_two(capsys, tmp_path):
    code, out = run(capsys, 'schur', '--group', '{"invariant_factors": "x"}')
    assert code == 2
    report = json.loads(out)
    assert report['error'] == 'SchemaError'
    assert report['path'] == '$.invariant_factors'
    broken = tmp_path / 'broken.json'
    broken.write_text('{"H": ', encoding='utf-8')
    assert main(['check-cocycle', '--in', str(broken)]) == 2


def test_check_cocycle_on_extension_data(capsys, tmp_path):
    path = write_json(tmp_path / 'q8.json', ser.extension_to_json(quaternion_extension()))
    code, out = run(capsys, 'check-cocycle', '--in', path)
    assert code == 0
    assert json.loads(out) == {'valid': True, 'order': 8, 'abelian': False, 'splits': False}


def test_check_cocycle_rejects_bad_tables(capsys, tmp_path):
    path = write_json(tmp_path / 'bad.json', {"H": {"invariant_factors": [2]}, "n": 2, "table": [[1, 0], [0, 0]]})
    code, out = run(capsys, 'check-cocycle', '--in', path)
    assert code == 1
    assert json.loads(out)['error'] == 'CocycleError'


def test_check_cocycle_reports_commutator_form(capsys, tmp_path):
    table = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 0], [0, 0, 1, 1]]
    path = write_json(tmp_path / 'alpha.json', {"H": {"invariant_factors": [2, 2]}, "n": 2, "table": table})
    code, out = run(capsys, 'check-cocycle', '--in', path)
    assert code == 0
    result = json.loads(out)
    assert result['commutator_form'] == {'E': [[0, 1], [1, 0]]}
    assert result['coboundary'] is False


def test_enumerate_phi(capsys):
    code, out = run(capsys, 'enumerate-phi', '--extension', 'D4')
    assert code == 0
    result = json.loads(out)
    assert result['count'] == 2
    assert [row['nondegenerate'] for row in result['bicharacters']] == [False, True]


def test_twisted_algebra(capsys, tmp_path):
    path = write_json(tmp_path / 'twisted.json', {"H": {"invariant_factors": [2, 2]}, "phi": {"E": [[0, 1], [1, 0]]}})
    code, out = run(capsys, 'twisted-algebra', '--in', path)
    assert code == 0
    result = json.loads(out)
    assert result['central_simple'] is True
    assert result['center_dimension'] == 1
    assert 'algebra' not in result


def _bsz_input(g_tuple):
    return {"G": "D4", "H_elements": ["e", "s2", "t", "s2t"], "alpha": {"E": [[0, 1], [1, 0]]}, "tuple": g_tuple}


def test_bsz_and_form_exists(capsys, tmp_path):
    path = write_json(tmp_path / 'bsz.json', _bsz_input(["e", "s"]))
    code, out = run(capsys, 'bsz', '--in', path)
    assert code == 0
    result = json.loads(out)
    assert result['dimension'] == 16
    assert result['graded_simple'] is True
    assert set(result['homogeneous_dims'].values()) == {2}
    code, out = run(capsys, 'form-exists', '--in', path)
    assert code == 0
    assert json.loads(out)['exists'] is True


def test_form_that_does_not_exist_still_succeeds(capsys, tmp_path):
    path = write_json(tmp_path / 'bsz.json', _bsz_input(["e", "e", "s"]))
    code, out = run(capsys, 'form-exists', '--in', path)
    assert code == 0
    result = json.loads(out)
    assert result['exists'] is False
    assert result['conditions']['cosets_balanced'] is False
    assert result['coset_counts'] == [2, 1]


def test_form_exists_for_a_nonabelian_h(capsys, tmp_path):
    spec = {"G": "S3", "H_elements": list(range(6)), "alpha": {"n": 1, "table": [[0] * 6] * 6}, "tuple": ["e"]}
    code, out = run(capsys, 'form-exists', '--in', write_json(tmp_path / 's3.json', spec))
    assert code == 0
    result = json.loads(out)
    assert result['exists'] is False
    assert result['conditions']['H_abelian'] is False
    assert result['conditions']['H_normal'] is True


@pytest.mark.parametrize("bad", ["nosuch", 99])
def test_unknown_elements_exit_with_two(capsys, tmp_path, bad):
    path = write_json(tmp_path / 'bsz.json', _bsz_input(["e", bad]))
    code, out = run(capsys, 'form-exists', '--in', path)
    assert code == 2
    report = json.loads(out)
    assert report['error'] == 'SchemaError'
    assert report['path'] == '$.tuple[1]'


def test_graded_center(capsys, tmp_path):
    path = write_json(tmp_path / 'center.json', {"G": "Q8", "H_elements": ["1", "-1"], "phi": {"E": [[0]]}})
    code, out = run(capsys, 'graded-center', '--in', path)
    assert code == 0
    result = json.loads(out)
    assert result['center']['degree_over_K0'] == 2
    assert result['report']['D_degree'] == 4
    path = write_json(tmp_path / 'rotations.json',
                      {"G": "D4", "H_elements": ["e", "s2", "s3", "s"], "phi": {"E": [[0]]}})
    code, out = run(capsys, 'graded-center', '--in', path)
    assert code == 1
    assert json.loads(out)['error'] == 'CenterNotGradedError'


def test_case_report_json_and_markdown(capsys):
    code, out = run(capsys, 'case-report', '--group', 'D4')
    assert code == 0
    result = json.loads(out)
    ser.validate(result, 'case_report')
    assert [row['D_degree'] for row in result['rows']] == [8, 4, 2, 4, 2]
    code, out = run(capsys, 'case-report', '--group', 'D4', '--format', 'markdown')
    assert code == 0
    assert out.startswith("### D4 (d=1)")


def test_case_report_against_golden_tables(capsys, tmp_path):
    assert run(capsys, 'case-report', '--group', 'Q8', '--compare-golden')[0] == 0
    with open(PACKAGE_ROOT / 'golden' / 'q8_d1.yml', 'r', encoding='utf-8') as f:
        golden = yaml.safe_load(f)
    golden['rows'][0]['D_degree'] = 7
    altered = tmp_path / 'altered.yml'
    altered.write_text(yaml.safe_dump(golden, allow_unicode=True), encoding='utf-8')
    code, out = run(capsys, 'case-report', '--group', 'Q8', '--compare-golden', str(altered))
    assert code == 1
    assert 'D_degree' in json.loads(out)['witness'][0]


def test_realize_then_verify(capsys, tmp_path):
    target = tmp_path / 'd4.json'
    code, _ = run(capsys, 'realize', '--extension', 'D4', '--phi', DIHEDRAL_PHI, '--out', str(target))
    assert code == 0
    presentation = json.loads(target.read_text(encoding='utf-8'))
    ser.validate(presentation, 'presentation')
    assert presentation['N'] == 4

    code, out = run(capsys, 'verify', '--in', str(target))
    assert code == 0
    report = json.loads(out)
    assert report['ok'] is True
    assert report['e_rank'] == 1

    presentation['gamma'][2][1]['root'] += 1
    corrupted = write_json(tmp_path / 'corrupted.json', presentation)
    code, out = run(capsys, 'verify', '--in', corrupted)
    assert code == 1
    report = json.loads(out)
    assert report['checks']['cocycle'] is False
    assert len(report['witnesses']['cocycle']) == 3


def test_verify_derives_the_kernel_from_the_grading(capsys, tmp_path):
    target = tmp_path / 'd4.json'
    assert run(capsys, 'realize', '--extension', 'D4', '--phi', DIHEDRAL_PHI, '--out', str(target))[0] == 0
    presentation = json.loads(target.read_text(encoding='utf-8'))
    # let the first symbol outside H fix every y-variable
    s = len(presentation['h_elements'])
    for v in presentation['y_variables']:
        presentation['action'][s][v] = [[v, 1]]
    code, out = run(capsys, 'verify', '--in', write_json(tmp_path / 'tampered.json', presentation))
    assert code == 1
    report = json.loads(out)
    assert report['checks']['kernel'] is False
    assert report['witnesses']['kernel'] == presentation['group']['names'][s]


def test_realize_is_deterministic(capsys):
    first = run(capsys, 'realize', '--extension', 'Q8', '--d', '2')
    second = run(capsys, 'realize', '--extension', 'Q8', '--d', '2')
    assert first[0] == 0
    assert first == second


def test_realize_markdown_lists_relations(capsys):
    code, out = run(capsys, 'realize', '--extension', 'D4', '--phi', DIHEDRAL_PHI, '--format', 'markdown')
    assert code == 0
    assert " = -1 * " in out


def test_non_invariant_phi_is_rejected(capsys, tmp_path):
    spec = {
        "extension": {
            "H": {"invariant_factors": [3, 3]},
            "Q": {"invariant_factors": [2]},
            "action": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
        },
        "phi": {"E": [[0, 1], [2, 0]]},
        "d": 1,
    }
    code, out = run(capsys, 'realize', '--in', write_json(tmp_path / 'swap.json', spec))
    assert code == 1
    assert json.loads(out)['error'] == 'NotInvariantError'


def test_config_init(capsys, tmp_path, monkeypatch):
    target = tmp_path / 'cfg' / 'gradalg.yml'
    monkeypatch.setenv('GRADALG_CONFIG_PATH', str(target))
    monkeypatch.setenv('GRADALG_THREADS', '2')
    code, out = run(capsys, 'config', 'init')
    assert code == 0
    assert json.loads(out)['config_path'] == str(target)
    assert yaml.safe_load(target.read_text(encoding='utf-8'))['parallel']['threads'] == 2


def test_unknown_command_is_an_argparse_error():
    with pytest.raises(SystemExit):
        main(['frobnicate'])
