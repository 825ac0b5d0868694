import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from catpush import fuzz
from catpush.cli import main
from catpush.io import (
    ParseError,
    canonical_category_text,
    load_document,
    parse_category,
    parse_span,
    parse_text,
    span_to_dict,
)

from helpers import FIXTURES, rng_from

seeds = st.integers(0, 10**9)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# ------------------------------------------------------------ parsing


def test_terminal_needs_no_explicit_identity():
    C = parse_category(load_document(FIXTURES / "terminal.yaml"))
    assert len(C.objects) == 1 and len(C.morphisms) == 1


def test_parse_error_on_garbage():
    with pytest.raises(ParseError):
        parse_text("objects: [unclosed")
    with pytest.raises(ParseError):
        parse_category({"morphisms": []})


@given(seeds)
def test_category_round_trip_is_a_fixed_point(seed):
    C = fuzz.random_category(rng_from(seed))
    text = canonical_category_text(C)
    again = parse_category(json.loads(text))
    assert set(again.objects) == set(C.objects) and set(again.morphisms) == set(C.morphisms)
    assert dict(again.identities) == dict(C.identities) and dict(again.compose) == dict(C.compose)
    assert canonical_category_text(again) == text


@given(seeds)
def test_span_round_trip(seed):
    span = fuzz.dwyer_span(rng_from(seed))
    doc = json.loads(json.dumps(span_to_dict(span)))
    back = parse_span(doc)
    assert back.left.obj_map == span.left.obj_map and back.right.mor_map == span.right.mor_map
    assert span_to_dict(back) == span_to_dict(span)


# ------------------------------------------------------------ check


def test_check_terminal(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "terminal.yaml")
    assert code == 0
    assert "1 object, 1 morphism" in out


def test_check_broken_associativity(capsys):
    code, _, err = run(capsys, "check", FIXTURES / "broken_associativity.yaml")
    assert code == 2
    assert "NonAssociative" in err


def test_check_expect_dwyer_fails_on_non_sieve(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "non_sieve_span.yaml", "--expect", "dwyer")
    assert code == 1


def test_check_expect_dwyer_holds_on_golden(capsys):
    code, _, _ = run(capsys, "check", FIXTURES / "golden_span.yaml", "--expect", "dwyer",
                     "--expect", "fully-faithful", "--expect", "sieve")
    assert code == 0


def test_missing_file_is_invalid(capsys, tmp_path):
    code, _, _ = run(capsys, "check", tmp_path / "absent.yaml")
    assert code == 2


def test_nonpositive_bound_is_invalid(capsys):
    code, _, _ = run(capsys, "pushout", FIXTURES / "golden_span.yaml", "--word-bound", "0")
    assert code == 2


# ------------------------------------------------------------ pushout


def test_golden_pushout_output(capsys, tmp_path):
    out_file = tmp_path / "d.json"
    code, out, _ = run(capsys, "pushout", FIXTURES / "golden_span.yaml", "-o", out_file)
    assert code == 0
    D = parse_category(json.loads(out_file.read_text()))
    assert sorted(D.objects) == ["0", "1", "2", "2'"]
    rel = {(D.src[m], D.dst[m]) for m, _, _ in D.morphisms if not D.is_identity(m)}
    assert rel == {("0", "1"), ("0", "2"), ("1", "2"), ("0", "2'"), ("1", "2'")}
    assert "DISAGREE" not in out


def test_identity_span_pushout_is_byte_identical_to_c(capsys, tmp_path):
    out_file = tmp_path / "d.json"
    code, _, _ = run(capsys, "pushout", FIXTURES / "identity_span.yaml", "-o", out_file)
    assert code == 0
    C = parse_category(load_document(FIXTURES / "identity_span.yaml")["C"])
    assert out_file.read_text() == canonical_category_text(C)


def test_empty_a_pushout(capsys, tmp_path):
    out_file = tmp_path / "d.json"
    code, _, _ = run(capsys, "pushout", FIXTURES / "empty_a_span.yaml", "-o", out_file)
    assert code == 0
    doc = load_document(FIXTURES / "empty_a_span.yaml")
    B, C = parse_category(doc["B"]), parse_category(doc["C"])
    D = parse_category(json.loads(out_file.read_text()))
    assert len(D.objects) == len(B.objects) + len(C.objects)


def test_output_is_deterministic(capsys):
    first = run(capsys, "pushout", FIXTURES / "golden_span.yaml")
    second = run(capsys, "pushout", FIXTURES / "golden_span.yaml")
    assert first == second


def test_structured_format_is_json(capsys):
    code, out, _ = run(capsys, "pushout", FIXTURES / "golden_span.yaml", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert isinstance(doc, dict)


def test_pushout_of_non_dwyer_span_is_invalid(capsys):
    code, _, _ = run(capsys, "pushout", FIXTURES / "non_sieve_span.yaml")
    assert code == 2


# ------------------------------------------------------------ other commands


def test_mapspace_pair(capsys):
    code, out, _ = run(capsys, "mapspace", FIXTURES / "golden_span.yaml", "--pair", "C:0", "B:2")
    assert code == 0 and "AGREE" in out


@pytest.mark.parametrize("which, fixture", [
    ("fourth", "golden_span.yaml"),
    ("fold", "golden_span.yaml"),
    ("sieve-union", "sieve_union.yaml"),
    ("pushout-product", "pushout_product.yaml"),
    ("beck-chevalley", "golden_span.yaml"),
    ("reedy", "reedy_1_a.yaml"),
    ("reedy", "reedy_2_1.yaml"),
])
def test_verify_commands_succeed(capsys, which, fixture):
    code, out, _ = run(capsys, "verify", which, FIXTURES / fixture)
    assert code == 0, out


def test_verify_reedy_prints_exact_cardinality(capsys):
    code, out, _ = run(capsys, "verify", "reedy", FIXTURES / "reedy_1_a.yaml", "--format", "structured")
    assert code == 0
    assert '"6"' in out


def test_check_reedy_structure_fixture(capsys):
    code, _, _ = run(capsys, "check", FIXTURES / "reedy_structure_2.yaml", "--expect", "reedy-structure")
    assert code == 0


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "fuzz", "reedy", "1", "--set-bound", "5")
    assert code == 3 and "budget" in err


def test_fuzz_writes_nothing_when_green(capsys, tmp_path):
    code, _, _ = run(capsys, "fuzz", "sieve-union", "5", "--fail-dir", tmp_path)
    assert code == 0
    assert not list(tmp_path.iterdir())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "catpush", "check", str(FIXTURES / "terminal.yaml")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "1 object" in proc.stdout
