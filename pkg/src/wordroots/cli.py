"""Command-line interface.

Exit codes: 0 success or affirmative answer; 1 negative answer (not a
code, infinite root, context-free but not regular square, oracle
mismatch); 2 not-context-free square; 3 search exhausted; 64 usage error;
65 malformed input file; 66 unreadable input file.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from . import automata as fa
from . import codes, contextual, kroot, languages, oracle
from .periodicity import ALL_CLASSES, ALL_KINDS, profile
from .words import BINARY, Alphabet, EmptyWordError

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66

log = logging.getLogger("wordroots.cli")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


class Output:
    """Renders results in the selected format on stdout."""

    def __init__(self, fmt: str, alphabet: Alphabet, stream=None):
        self.fmt = fmt
        self.alphabet = alphabet
        self.stream = stream or sys.stdout

    def word(self, w, empty="ε"):
        if len(w) == 0:
            return {"human": empty, "structured": "-", "json": ""}[self.fmt]
        return self.alphabet.format(w)

    def emit(self, record: dict, human: str):
        """``record`` is an ordered mapping of stable field names."""
        if self.fmt == "json":
            print(json.dumps(record, indent=2, ensure_ascii=False), file=self.stream)
        elif self.fmt == "structured":
            for key, value in record.items():
                if isinstance(value, bool):
                    value = "yes" if value else "no"
                elif isinstance(value, (list, tuple)):
                    value = " ".join(str(v) for v in value) if value else "-"
                elif value is None:
                    value = "-"
                print(f"{key}: {value}", file=self.stream)
        else:
            print(human, file=self.stream)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from None


def _alphabet(args) -> Alphabet:
    if args.alphabet is None:
        return BINARY
    p = Path(args.alphabet)
    if p.is_file():
        return Alphabet.from_file(p)
    return Alphabet.from_string(args.alphabet)


def _parse_word(args, text: str):
    alphabet = _alphabet(args)
    if args.alphabet is None:
        w = "".join(text.split())
        return w, Alphabet(tuple(sorted(set(w)))) if w else alphabet
    try:
        return alphabet.parse(text), alphabet
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- analyze --------------------------------------------------------------------


def cmd_analyze(args, out_fmt) -> int:
    w, alphabet = _parse_word(args, args.word)
    if len(w) == 0:
        raise UsageError("analyze needs a nonempty word")
    out = Output(out_fmt, alphabet)
    prof = profile(w)
    status = 0
    if out_fmt == "structured":
        print(prof.to_record(alphabet.format), end="")
    elif out_fmt == "json":
        print(prof.to_json(alphabet.format))
    else:
        lines = [f"word    {out.word(w)}", f"length  {len(w)}", f"degree  {prof.degree}",
                 f"k       {prof.k} distinct root{'s' if prof.k != 1 else ''}", "", "roots:"]
        for kind in ALL_KINDS:
            lines.append(f"  {kind.value:<7} {out.word(prof.roots[kind])}")
        lines += ["", "classes:"]
        for c in ALL_CLASSES:
            lines.append(f"  {c.value:<6} {'member' if prof.membership[c] else '-'}")
        print("\n".join(lines))
    if args.oracle:
        roots, member = oracle.naive_roots(w), oracle.naive_memberships(w)
        bad = [k.value for k in ALL_KINDS if roots[k] != prof.roots[k]]
        bad += [c.value for c in ALL_CLASSES if member[c] != prof.membership[c]]
        if bad:
            print(f"oracle mismatch: {' '.join(bad)}", file=sys.stderr)
            status = 1
        else:
            print("oracle: agrees", file=sys.stderr)
    return status


# -- search -----------------------------------------------------------------------


def cmd_search(args, out_fmt) -> int:
    alphabet = _alphabet(args)
    if len(alphabet) != 2 or alphabet.multichar:
        raise UsageError("search runs over a two-letter single-character alphabet")
    if not 1 <= args.k <= 6:
        raise UsageError("--k must be in 1..6")
    if args.bound < 1:
        raise UsageError("--bound must be >= 1")
    rep = kroot.smallest_k_root(args.k, args.bound, strong=args.strong, alphabet=alphabet,
                                min_length=args.min_length, workers=args.workers)
    out = Output(out_fmt, alphabet)
    kind = "strong " if args.strong else ""
    if rep.witness is None:
        human = f"no {kind}{args.k}-root word of length <= {args.bound} (search exhausted)"
    else:
        human = (f"{rep.witness}\n"
                 f"smallest {kind}{args.k}-root word, length {len(rep.witness)}, "
                 f"{rep.words_examined} words examined")
    d = rep.to_dict()
    d["elapsed"] = round(d["elapsed"], 3)
    out.emit(d, human)
    if args.oracle and rep.witness is not None:
        ok = oracle.naive_k_root_count(rep.witness) == args.k
        print(f"oracle: {'agrees' if ok else 'MISMATCH'}", file=sys.stderr)
        if not ok:
            return 1
    return 0 if rep.witness is not None else 3


# -- code ---------------------------------------------------------------------------


def cmd_code(args, out_fmt) -> int:
    alphabet = _alphabet(args) if args.alphabet else None
    words = codes.parse_word_list(_read(args.file), alphabet)
    if not words:
        raise DataError(f"{args.file}: no words")
    if alphabet is None:
        alphabet = Alphabet(tuple(sorted({s for w in words for s in w}))) if any(words) else BINARY
    out = Output(out_fmt, alphabet)
    shown = [out.word(w) for w in words]
    try:
        if args.check == "code":
            wit = codes.code_witness(words)
            rec = {"words": shown, "code": wit is None}
            if wit is None:
                human = "code"
            else:
                rec["witness"] = out.word(wit.word)
                rec["factorization_1"] = [out.word(x) for x in wit.top]
                rec["factorization_2"] = [out.word(x) for x in wit.bottom]
                human = (f"not a code: {out.word(wit.word)} = "
                         f"{'.'.join(rec['factorization_1'])} = {'.'.join(rec['factorization_2'])}")
            out.emit(rec, human)
            return 0 if wit is None else 1
        if args.check == "ncode":
            ok = codes.is_n_code(words, args.n)
            out.emit({"words": shown, "n": args.n, "n_code": ok},
                     f"{args.n}-code" if ok else f"not a {args.n}-code")
            return 0 if ok else 1
        if args.m is not None:
            ok = codes.is_intercode_for(words, args.m, alphabet, max_m=max(args.m, codes.DEFAULT_INTERCODE_CAP))
            out.emit({"words": shown, "m": args.m, "intercode": ok},
                     f"intercode of index {args.m}" if ok else f"not an intercode for m={args.m}")
            return 0 if ok else 1
        m = codes.intercode_index(words, alphabet, args.max_m)
        out.emit({"words": shown, "max_m": args.max_m, "intercode": m is not None, "index": m},
                 f"intercode, smallest index {m}" if m else f"not an intercode for any m <= {args.max_m}")
        return 0 if m else 1
    except codes.EmptyWordInCode as exc:
        raise DataError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- lang -------------------------------------------------------------------------------


def _load_language(path):
    try:
        return fa.load_language(_read(path))
    except fa.ParseError as exc:
        raise DataError(f"{path}: {exc}") from None
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def cmd_lang(args, out_fmt) -> int:
    dfa, grammar = _load_language(args.file)
    out = Output(out_fmt, dfa.alphabet)
    if args.question == "root-finite":
        roots = languages.root_finite(dfa, args.bound)
        if roots is None:
            out.emit({"root_finite": False, "roots": None}, "infinite root")
            return 1
        shown = sorted((out.word(r) for r in roots), key=lambda s: (len(s), s))
        out.emit({"root_finite": True, "roots": shown},
                 "finite root: {" + ", ".join(shown) + "}")
        return 0
    if args.question == "square-class":
        try:
            res = languages.square_classification(grammar if grammar is not None else dfa, args.max_m)
        except languages.FipCapExceeded as exc:
            raise UsageError(f"{exc}; raise --max-m to search anyway") from None
        label = {
            languages.Verdict.REGULAR: "regular",
            languages.Verdict.CONTEXT_FREE_NOT_REGULAR: "context-free, not regular",
            languages.Verdict.NOT_CONTEXT_FREE: "not context-free",
        }[res.verdict]
        rec = {"verdict": res.verdict.value, "m": res.m}
        human = f"square: {label}"
        if res.verdict is languages.Verdict.REGULAR:
            shown = sorted((out.word(r) for r in res.evidence), key=lambda s: (len(s), s))
            rec["roots"] = shown
            human += "\nfinite root: {" + ", ".join(shown) + "}"
        elif res.verdict is languages.Verdict.CONTEXT_FREE_NOT_REGULAR:
            rec["cover"] = [str(c) for c in res.evidence]
            human += "\nFIP cover: " + " ∪ ".join(rec["cover"])
        out.emit(rec, human)
        return res.verdict.exit_code
    # pow
    if args.H is None:
        raise UsageError("pow needs --H")
    H = languages.ExponentSet.parse(args.H)
    if not H.is_finite:
        raise UsageError("pow needs a finite --H list")
    try:
        pd = languages.pow_finite_H(dfa, H.values)
    except languages.NotFiniteRoot as exc:
        raise DataError(str(exc)) from None
    words = sorted(fa.enumerate_language(pd, args.maxlen), key=lambda w: (len(w), w))
    shown = [out.word(w) for w in words]
    if args.emit_automaton:
        print(pd.to_text(), end="")
        return 0
    out.emit({"H": sorted(H.values), "maxlen": args.maxlen, "states": len(pd), "words": shown},
             f"pow_H with H={H}, words up to length {args.maxlen}:\n" + "\n".join(shown))
    return 0


# -- contextual ----------------------------------------------------------------------


def cmd_contextual(args, out_fmt) -> int:
    if args.file == "q":
        g = contextual.q_grammar(_alphabet(args))
    else:
        try:
            g = contextual.parse_contextual(_read(args.file))
        except contextual.GrammarParseError as exc:
            raise DataError(f"{args.file}: {exc}") from None
        except ValueError as exc:
            raise DataError(f"{args.file}: {exc}") from None
    lang = contextual.language_up_to(g, args.mode, args.maxlen)
    out = Output(out_fmt, g.alphabet)
    words = sorted(lang, key=lambda w: (len(w), tuple(g.alphabet.index(s) for s in w)))
    shown = [out.word(w) for w in words]
    out.emit({"mode": args.mode, "maxlen": args.maxlen, "count": len(shown), "words": shown},
             "\n".join(shown) + f"\n({len(shown)} words)")
    return 0


# -- selfcheck ----------------------------------------------------------------------


def cmd_selfcheck(args, out_fmt) -> int:
    """Random words cross-checked against the brute-force reference."""
    rng = random.Random(args.seed)
    alphabet = _alphabet(args)
    syms = alphabet.symbols
    bad = 0
    for _ in range(args.trials):
        n = rng.randint(1, args.maxlen)
        w = tuple(rng.choice(syms) for _ in range(n))
        w = w if alphabet.multichar else "".join(w)
        prof = profile(w)
        if oracle.naive_roots(w) != prof.roots or oracle.naive_memberships(w) != prof.membership:
            bad += 1
            print(f"mismatch: {alphabet.format(w)}", file=sys.stderr)
    out = Output(out_fmt, alphabet)
    out.emit({"seed": args.seed, "trials": args.trials, "mismatches": bad},
             f"{args.trials} random words, {bad} mismatches (seed {args.seed})")
    return 0 if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting options given before it
    common.add_argument("--format", choices=("human", "structured", "json"), default=argparse.SUPPRESS,
                        help="output format (default human)")
    common.add_argument("--alphabet", default=argparse.SUPPRESS,
                        help="symbols, e.g. 'ab' or 'x1 x2', or a file with one symbol per line")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized commands")
    common.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="no progress on stderr")
    common.add_argument("--oracle", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    p = _Parser(prog="wordroots", description="Primitive words, generalized roots and language powers.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="roots, classes, degree and k of a word")
    a.add_argument("word")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("search", parents=[common], help="shortlex-first k-root word")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--bound", type=int, required=True, help="maximal word length")
    s.add_argument("--strong", action="store_true", help="periodic words only")
    s.add_argument("--min-length", type=int, default=1)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("code", parents=[common], help="code / n-code / intercode checks on a word list")
    c.add_argument("check", choices=("code", "ncode", "intercode"))
    c.add_argument("file", help="one word per line, '-' for the empty word")
    c.add_argument("--n", type=int, default=2, help="subset size for ncode")
    c.add_argument("--m", type=int, default=None, help="intercode index to test")
    c.add_argument("--max-m", type=int, default=codes.DEFAULT_INTERCODE_CAP)
    c.set_defaults(func=cmd_code)

    lg = sub.add_parser("lang", parents=[common], help="decisions on a regular language file")
    lg.add_argument("question", choices=("root-finite", "square-class", "pow"))
    lg.add_argument("file", help="automaton or right-linear grammar")
    lg.add_argument("--H", default=None, help="finite exponent list for pow, e.g. 0,2,3")
    lg.add_argument("--maxlen", type=int, default=8, help="listing bound for pow")
    lg.add_argument("--emit-automaton", action="store_true", help="print the pow automaton instead")
    lg.add_argument("--bound", type=int, default=None, help="root-length bound for root-finite")
    lg.add_argument("--max-m", type=int, default=languages.DEFAULT_FIP_CAP)
    lg.set_defaults(func=cmd_lang)

    g = sub.add_parser("contextual", parents=[common], help="bounded contextual language")
    g.add_argument("file", help="grammar file, or 'q' for the built-in primitive-word grammar")
    g.add_argument("--mode", choices=("ex", "in"), default="ex")
    g.add_argument("--maxlen", type=int, default=6)
    g.set_defaults(func=cmd_contextual)

    sc = sub.add_parser("selfcheck", parents=[common], help="random oracle cross-check")
    sc.add_argument("--trials", type=int, default=200)
    sc.add_argument("--maxlen", type=int, default=12)
    sc.set_defaults(func=cmd_selfcheck)
    return p


_COMMON_DEFAULTS = {"format": "human", "alphabet": None, "seed": 0, "quiet": False, "oracle": False}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, value in _COMMON_DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, value)
    root = logging.getLogger("wordroots")
    for h in [h for h in root.handlers if getattr(h, "_wordroots_cli", False)]:
        root.removeHandler(h)
    # bound per call so a replaced sys.stderr is honoured
    handler = logging.StreamHandler(sys.stderr)
    handler._wordroots_cli = True
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(handler)
    root.setLevel(logging.WARNING if args.quiet else logging.INFO)
    fmt = args.format
    try:
        return args.func(args, fmt)
    except UsageError as exc:
        print(f"wordroots: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except EmptyWordError as exc:
        print(f"wordroots: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except DataError as exc:
        print(f"wordroots: error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except FileNotFoundError as exc:
        print(f"wordroots: error: {exc}", file=sys.stderr)
        return EX_NOINPUT


if __name__ == "__main__":
    raise SystemExit(main())
