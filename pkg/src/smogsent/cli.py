"""Command line: ``smogsent score|report|validate``.

Exit codes: 0 success, 1 invalid input or ingest failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from functools import partial
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .aggregate import AggregateReport, Aggregator, ScoredDoc, month_of
from .corpus import (
    Account,
    Document,
    IngestError,
    Reject,
    ingest_accounts,
    ingest_documents,
    parse_timestamp,
)
from .normalize import AbbrevTable, default_abbrevs, load_abbrevs, normalize
from .sentiment import CLASSES, Lexicon, LexiconError, SentimentModel, classify, load_lexicon, starter_lexicon, train
from .smog import grade_document
from .syllables import SyllableCounter, SyllableMode, count_polysyllables, load_exceptions

log = logging.getLogger("smogsent")

SCORED_HEADER = ["doc_id", "account_id", "month", "sigma", "phi", "smog_grade", "formula",
                 "polarity", "p_pos", "p_neg", "p_neu"]
REJECTS_HEADER = ["line", "doc_id", "reason"]
MEAN_SMOG_HEADER = ["account_id", "handle", "n_graded", "mean_smog"]
MONTHLY_SMOG_HEADER = ["account_id", "month", "n_graded", "mean_smog"]
POLARITY_HEADER = ["account_id", "n_pos", "n_neg", "n_neu", "n_total"]
GENDER_HEADER = ["gender", "n_accounts", "mean_pos", "mean_neg", "mean_neu"]
DOMINANT_HEADER = ["account_id", "month", "n_pos", "n_neg", "n_neu", "dominant"]

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    documents_path: Optional[Path] = None
    accounts_path: Optional[Path] = None
    lexicon_path: Optional[Path] = None
    abbrev_path: Optional[Path] = None
    exceptions_path: Optional[Path] = None
    start: Optional[datetime] = None
    end: Optional[datetime] = None
    smog_variant: str = "precise"
    alpha: float = 1.0
    tz_offset: int = 0
    filipino_syllables: bool = False
    out_dir: Path = Path(".")
    jobs: int = 1

    def __post_init__(self):
        if self.start is not None and self.end is not None and not self.start < self.end:
            raise ValueError("--start must be before --end")
        if not self.alpha > 0:
            raise ValueError("--alpha must be positive")


def _fmt_grade(x: float) -> str:
    return f"{x:.4f}"


def _fmt_prob(x: float) -> str:
    return f"{x:.6f}"


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


# --------------------------------------------------------------------------
# pipeline


@dataclass(frozen=True)
class Resources:
    abbrevs: AbbrevTable
    counter: SyllableCounter
    model: SentimentModel
    long_formula: str
    tz_offset: int


def load_resources(config: RunConfig) -> Resources:
    try:
        abbrevs = load_abbrevs(config.abbrev_path) if config.abbrev_path else default_abbrevs()
        exceptions = load_exceptions(config.exceptions_path) if config.exceptions_path else {}
        lexicon: Lexicon = load_lexicon(config.lexicon_path) if config.lexicon_path else starter_lexicon()
    except LexiconError as exc:
        raise InputError(f"lexicon {config.lexicon_path}: {exc}") from exc
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    mode = SyllableMode.FILIPINO if config.filipino_syllables else SyllableMode.ENGLISH
    return Resources(abbrevs, SyllableCounter(exceptions, mode), train(lexicon, config.alpha),
                     config.smog_variant, config.tz_offset)


@dataclass(frozen=True)
class ScoredRow:
    scored: ScoredDoc
    sigma: int
    phi: int
    formula: str
    posterior: tuple[float, float, float]

    def csv_row(self) -> list[str]:
        s = self.scored
        return [s.doc_id, s.account_id, str(s.month), str(self.sigma), str(self.phi),
                "" if s.grade is None else _fmt_grade(s.grade), self.formula,
                s.polarity.value, *(_fmt_prob(p) for p in self.posterior)]


def score_document(doc: Document, res: Resources) -> ScoredRow:
    norm = normalize(doc.text, res.abbrevs)
    label, posterior = classify(res.model, norm)
    if norm.sorable:
        grade = grade_document(norm, res.counter, res.long_formula)
        phi, value, formula = count_polysyllables(res.counter, norm), grade.grade, grade.formula.value
    else:
        phi, value, formula = 0, None, ""
    scored = ScoredDoc(doc.id, doc.account_id, month_of(doc.timestamp, res.tz_offset), value, label)
    return ScoredRow(scored, norm.sigma, phi, formula, tuple(posterior[c] for c in CLASSES))


def score_all(docs: Sequence[Document], res: Resources, jobs: int = 1) -> list[ScoredRow]:
    if jobs <= 1 or len(docs) < 2:
        return [score_document(d, res) for d in docs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order
        return list(pool.map(partial(score_document, res=res), docs, chunksize=64))


def load_corpus(config: RunConfig, need_accounts: bool):
    if config.documents_path is None:
        raise InputError("--documents is required")
    accounts: list[Account] = []
    if config.accounts_path is not None:
        try:
            accounts = ingest_accounts(config.accounts_path)
        except IngestError as exc:
            raise InputError(str(exc)) from exc
    elif need_accounts:
        raise InputError("--accounts is required")
    try:
        result = ingest_documents(
            config.documents_path, [a.id for a in accounts] if config.accounts_path else None
        )
    except IngestError as exc:
        raise InputError(str(exc)) from exc
    start = config.start or datetime(1970, 1, 1, tzinfo=timezone.utc)
    end = config.end or datetime(2100, 1, 1, tzinfo=timezone.utc)
    kept: list[Document] = []
    rejects = list(result.rejects)
    for doc, line in zip(result.documents, result.lines):
        if start <= doc.timestamp < end:
            kept.append(doc)
        else:
            rejects.append(Reject(line, doc.id, "outside time window"))
    rejects.sort(key=lambda r: r.line)
    return accounts, kept, rejects


def _write_rejects(out_dir: Path, rejects: list[Reject]) -> None:
    _write_csv(out_dir / "rejects.csv", REJECTS_HEADER, ([r.line, r.doc_id, r.reason] for r in rejects))
    for r in rejects:
        log.warning("rejected line %d (%s): %s", r.line, r.doc_id or "?", r.reason)


def cmd_score(config: RunConfig) -> int:
    _, docs, rejects = load_corpus(config, need_accounts=False)
    res = load_resources(config)
    rows = score_all(docs, res, config.jobs)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(config.out_dir / "scored.csv", SCORED_HEADER, (r.csv_row() for r in rows))
    _write_rejects(config.out_dir, rejects)
    return EXIT_OK


def write_report(report: AggregateReport, accounts: Sequence[Account], out_dir: Path) -> None:
    handle = {a.id: a.handle for a in accounts}
    _write_csv(out_dir / "mean_smog.csv", MEAN_SMOG_HEADER, (
        [acc, handle.get(acc, ""), report.graded_count[acc], _fmt_grade(g)]
        for acc, g in report.mean_grade.items()))
    _write_csv(out_dir / "monthly_smog.csv", MONTHLY_SMOG_HEADER, (
        [acc, str(month), report.monthly_graded_count[(acc, month)], _fmt_grade(g)]
        for (acc, month), g in report.monthly_mean_grade.items()))
    _write_csv(out_dir / "polarity_counts.csv", POLARITY_HEADER, (
        [acc, *c, c.total] for acc, c in report.polarity_counts.items()))
    _write_csv(out_dir / "gender_counts.csv", GENDER_HEADER, (
        [g.value, report.gender_accounts[g], *(_fmt_grade(m) for m in means)]
        for g, means in report.gender_counts.items()))
    _write_csv(out_dir / "monthly_dominant.csv", DOMINANT_HEADER, (
        [acc, str(month), *c, report.monthly_dominant[(acc, month)].value]
        for (acc, month), c in report.monthly_polarity_counts.items()))


def cmd_report(config: RunConfig) -> int:
    accounts, docs, rejects = load_corpus(config, need_accounts=True)
    res = load_resources(config)
    rows = score_all(docs, res, config.jobs)
    report = Aggregator.of(r.scored for r in rows).report(accounts)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    write_report(report, accounts, config.out_dir)
    _write_rejects(config.out_dir, rejects)
    return EXIT_OK


def cmd_validate(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    ok = True

    def check(label: str, path: Optional[Path], loader):
        nonlocal ok
        if path is None:
            return None
        try:
            value = loader(path)
        except (OSError, ValueError, IngestError) as exc:
            ok = False
            print(f"ERROR {label} {path}: {exc}", file=out)
            return None
        print(f"OK    {label} {path}", file=out)
        return value

    accounts = check("accounts", config.accounts_path, ingest_accounts)
    check("lexicon", config.lexicon_path, load_lexicon)
    check("abbrevs", config.abbrev_path, load_abbrevs)
    check("exceptions", config.exceptions_path, load_exceptions)
    if config.documents_path is not None:
        ids = [a.id for a in accounts] if accounts is not None else None
        try:
            result = ingest_documents(config.documents_path, ids)
        except IngestError as exc:
            ok = False
            print(f"ERROR documents {config.documents_path}: {exc}", file=out)
        else:
            if result.rejects:
                ok = False
                print(f"ERROR documents {config.documents_path}: {len(result.rejects)} invalid record(s)", file=out)
                for r in result.rejects:
                    print(f"      line {r.line}: {r.reason}", file=out)
            else:
                print(f"OK    documents {config.documents_path} ({len(result.documents)} records)", file=out)
    return EXIT_OK if ok else EXIT_INVALID


# --------------------------------------------------------------------------
# argument parsing


def _timestamp_arg(value: str) -> datetime:
    try:
        if len(value) == 10:  # bare date
            value += "T00:00:00Z"
        return parse_timestamp(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(value: str) -> float:
    x = float(value)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smogsent", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--documents", type=Path, help="JSON-lines micropost archive")
    common.add_argument("--accounts", type=Path, help="accounts CSV (id,handle,display_name,gender)")
    common.add_argument("--lexicon", type=Path, help="polarity lexicon TSV (default: bundled starter lexicon)")
    common.add_argument("--abbrevs", type=Path, help="abbreviation TSV (default: bundled table)")
    common.add_argument("--exceptions", type=Path, help="syllable exception TSV")
    common.add_argument("--start", type=_timestamp_arg, help="window start, inclusive (RFC 3339 or YYYY-MM-DD)")
    common.add_argument("--end", type=_timestamp_arg, help="window end, exclusive")
    common.add_argument("--smog-variant", default="precise",
                        choices=["precise", "simplified-conventional", "simplified-paper"],
                        help="formula for documents of 30+ sentences (default: precise)")
    common.add_argument("--alpha", type=_positive_float, default=1.0, help="Laplace smoothing (default 1.0)")
    common.add_argument("--tz-offset", type=int, default=0, help="minutes added to UTC before month bucketing")
    common.add_argument("--filipino-syllables", action="store_true",
                        help="count one syllable per vowel for every word")
    common.add_argument("--out-dir", type=Path, default=Path("."), help="output directory")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scoring")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("score", parents=[common], help="write per-document scored.csv")
    sub.add_parser("report", parents=[common], help="write aggregate report CSVs")
    sub.add_parser("validate", parents=[common], help="check input files")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        documents_path=args.documents, accounts_path=args.accounts, lexicon_path=args.lexicon,
        abbrev_path=args.abbrevs, exceptions_path=args.exceptions, start=args.start, end=args.end,
        smog_variant=args.smog_variant, alpha=args.alpha, tz_offset=args.tz_offset,
        filipino_syllables=args.filipino_syllables, out_dir=args.out_dir, jobs=args.jobs,
    )


COMMANDS = {"score": cmd_score, "report": cmd_report, "validate": cmd_validate}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(message)s")
    try:
        config = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return COMMANDS[args.command](config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
