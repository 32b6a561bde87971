import json
import subprocess
import sys
from pathlib import Path

import pytest

from wordroots.cli import EX_DATAERR, EX_NOINPUT, EX_USAGE, main
from wordroots.periodicity import PeriodicityProfile, profile

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main(["-q", *map(str, argv)])
    out = capsys.readouterr()
    return code, out.out, out.err


def fields(text):
    out = {}
    for line in text.splitlines():
        k, _, v = line.partition(":")
        out[k.strip()] = v.strip()
    return out


class TestAnalyze:
    def test_five_roots(self, capsys):
        code, out, _ = run(capsys, "analyze", "abaabaababaabaabab")
        assert code == 0
        assert "k       5 distinct roots" in out
        assert "hhroot  aba" in out

    def test_single_letter(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "analyze", "a")
        assert code == 0 and json.loads(out)["k"] == 1

    def test_empty_word_is_usage_error(self, capsys):
        code, _, err = run(capsys, "analyze", "")
        assert code == EX_USAGE and "nonempty" in err

    @pytest.mark.parametrize("w", ["abaabaababaabaabab", "ababa", "abaabab", "aaaa", "b"])
    def test_structured_round_trip(self, capsys, w):
        code, out, _ = run(capsys, "--format", "structured", "analyze", w)
        assert code == 0
        assert PeriodicityProfile.from_record(out) == profile(w)

    def test_format_after_subcommand(self, capsys):
        code, out, _ = run(capsys, "analyze", "--format", "json", "aba")
        assert json.loads(out)["roots"]["sroot"] == "ab"

    def test_multichar_alphabet(self, capsys):
        code, out, _ = run(capsys, "--alphabet", "x1 x2", "--format", "json", "analyze", "x1 x2 x1 x2")
        d = json.loads(out)
        assert code == 0 and d["roots"]["root"] == "x1 x2" and d["degree"] == 2
        code, _, _ = run(capsys, "--alphabet", "x1 x2", "analyze", "x1 x3")
        assert code == EX_USAGE

    def test_oracle_flag(self, capsys):
        code, _, err = run(capsys, "analyze", "--oracle", "abaababaab")
        assert code == 0 and "oracle: agrees" in err


class TestSearch:
    def test_found(self, capsys):
        code, out, _ = run(capsys, "search", "--k", 4, "--bound", 10)
        assert code == 0 and out.splitlines()[0] == "abaabaabab"

    def test_strong(self, capsys):
        code, out, _ = run(capsys, "--format", "structured", "search", "--k", 2, "--strong", "--bound", 10)
        f = fields(out)
        assert code == 0 and f["witness"] == "abaababaab" and f["strong"] == "yes"

    def test_exhausted(self, capsys):
        code, out, _ = run(capsys, "search", "--k", 6, "--bound", 5)
        assert code == 3 and "exhausted" in out

    def test_bad_k(self, capsys):
        code, _, _ = run(capsys, "search", "--k", 9, "--bound", 5)
        assert code == EX_USAGE

    def test_progress_goes_to_stderr(self, capsys):
        code = main(["search", "--k", "3", "--bound", "5"])
        out = capsys.readouterr()
        assert code == 0
        assert out.out.splitlines()[0] == "ababa"
        assert "length 4 done" in out.err


class TestCode:
    def test_code(self, capsys):
        code, out, _ = run(capsys, "code", "code", DATA / "code_aba_b.txt")
        assert code == 0 and out.strip() == "code"

    def test_not_code(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "code", "code", DATA / "noncode.txt")
        d = json.loads(out)
        assert code == 1 and d["code"] is False and d["witness"] == "aba"

    def test_ncode_and_intercode(self, capsys):
        assert run(capsys, "code", "ncode", DATA / "code_aba_b.txt", "--n", 2)[0] == 0
        code, out, _ = run(capsys, "code", "intercode", DATA / "code_aba_b.txt")
        assert code in (0, 1) and "intercode" in out

    def test_empty_word_in_file(self, capsys, tmp_path):
        f = tmp_path / "c.txt"
        f.write_text("a\n-\n")
        code, _, err = run(capsys, "code", "code", f)
        assert code == EX_DATAERR and "empty word" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "code", "code", tmp_path / "nope.txt")
        assert code == EX_NOINPUT


class TestLang:
    @pytest.mark.parametrize("name,code,label", [
        ("a_bstar.dfa", 1, "context-free, not regular"),
        ("a_bstar.grammar", 1, "context-free, not regular"),
        ("sigma_star.dfa", 2, "not context-free"),
        ("ab_star.dfa", 0, "regular"),
    ])
    def test_square_class(self, capsys, name, code, label):
        got, out, _ = run(capsys, "lang", "square-class", DATA / name)
        assert got == code
        assert out.splitlines()[0] == f"square: {label}"

    def test_root_finite(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "lang", "root-finite", DATA / "ab_star.dfa")
        assert code == 0 and json.loads(out)["roots"] == ["ab"]
        code, _, _ = run(capsys, "lang", "root-finite", DATA / "a_bstar.dfa")
        assert code == 1

    def test_pow(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "lang", "pow", DATA / "ab_star.dfa",
                           "--H", "2", "--maxlen", 8)
        assert code == 0 and json.loads(out)["words"] == ["", "abab", "abababab"]

    def test_pow_needs_finite_root(self, capsys):
        code, _, _ = run(capsys, "lang", "pow", DATA / "a_bstar.dfa", "--H", "2")
        assert code == EX_DATAERR

    def test_pow_emits_automaton(self, capsys):
        code, out, _ = run(capsys, "lang", "pow", DATA / "ab_star.dfa", "--H", "3", "--emit-automaton")
        assert code == 0 and out.startswith("alphabet: a b")

    def test_bad_file(self, capsys, tmp_path):
        f = tmp_path / "x.dfa"
        f.write_text("alphabet: a b\nstart: p\np c -> p\n")
        code, _, err = run(capsys, "lang", "root-finite", f)
        assert code == EX_DATAERR and "line 3" in err

    def test_cap(self, capsys):
        code, _, err = run(capsys, "lang", "square-class", DATA / "sigma_star.dfa", "--max-m", 2)
        assert code == EX_USAGE and "cap" in err


class TestContextual:
    def test_example1(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "contextual", DATA / "example1.ctx", "--maxlen", 8)
        assert code == 0 and json.loads(out)["words"] == ["", "ab", "aabb"]

    def test_builtin_q(self, capsys):
        code, out, _ = run(capsys, "--format", "structured", "contextual", "q", "--maxlen", 6)
        # 2 + 2 + 6 + 12 + 30 + 54 primitive binary words of lengths 1..6
        assert code == 0 and fields(out)["count"] == "106"

    def test_parse_error_has_line(self, capsys, tmp_path):
        f = tmp_path / "g.ctx"
        f.write_text("axioms: a\ncontexts:\n  a b\nchoice: table\n  default -> {}\n")
        code, _, err = run(capsys, "contextual", f)
        assert code == EX_DATAERR and "line 3" in err


class TestMisc:
    def test_selfcheck(self, capsys):
        code, out, _ = run(capsys, "--seed", 7, "--format", "json", "selfcheck", "--trials", 30)
        d = json.loads(out)
        assert code == 0 and d == {"seed": 7, "trials": 30, "mismatches": 0}

    def test_usage_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == EX_USAGE

    def test_module_entry_point(self):
        r = subprocess.run([sys.executable, "-m", "wordroots", "-q", "analyze", "aba"],
                           capture_output=True, text=True, check=False)
        assert r.returncode == 0 and "k       2 distinct roots" in r.stdout
