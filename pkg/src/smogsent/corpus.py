"""Micropost archives, account metadata and document fetchers."""
from __future__ import annotations

import csv
import enum
import json
import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Protocol

__all__ = [
    "Account",
    "Document",
    "Fetcher",
    "FileFetcher",
    "Gender",
    "IngestError",
    "IngestResult",
    "MemoryFetcher",
    "Reject",
    "dump_documents",
    "file_fetcher",
    "filter_window",
    "format_timestamp",
    "ingest_accounts",
    "ingest_documents",
    "parse_timestamp",
]

log = logging.getLogger(__name__)

ACCOUNT_HEADER = ["id", "handle", "display_name", "gender"]
DOCUMENT_FIELDS = ("id", "account_id", "created_at", "text")
_MIN_TS = datetime(1970, 1, 1, tzinfo=timezone.utc)
_MAX_TS = datetime(2100, 1, 1, tzinfo=timezone.utc)


class IngestError(Exception):
    """An input file cannot be read or is invalid as a whole."""


class Gender(str, enum.Enum):
    MALE = "male"
    FEMALE = "female"
    UNSPECIFIED = "unspecified"


@dataclass(frozen=True)
class Account:
    id: str
    handle: str
    display_name: str = ""
    gender: Gender = Gender.UNSPECIFIED

    def __post_init__(self):
        if not self.id:
            raise ValueError("account id must be non-empty")
        if not self.handle:
            raise ValueError(f"account {self.id!r} has an empty handle")


@dataclass(frozen=True)
class Document:
    id: str
    account_id: str
    timestamp: datetime
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        if not self.account_id:
            raise ValueError(f"document {self.id!r} has no account_id")
        if self.timestamp.tzinfo is None:
            raise ValueError(f"document {self.id!r} timestamp is not timezone-aware")
        if not (_MIN_TS <= self.timestamp < _MAX_TS):
            raise ValueError(f"document {self.id!r} timestamp outside [1970, 2100)")


class Reject(NamedTuple):
    line: int
    doc_id: str
    reason: str


class IngestResult(NamedTuple):
    documents: list[Document]
    rejects: list[Reject]
    lines: list[int]  # source line of each accepted document


def parse_timestamp(value: str) -> datetime:
    """RFC 3339 timestamp to an aware UTC datetime truncated to seconds."""
    if not isinstance(value, str) or not value:
        raise ValueError("missing timestamp")
    text = value.strip()
    if text[-1:] in ("Z", "z"):
        text = text[:-1] + "+00:00"
    if len(text) < 11 or text[10] not in "Tt ":
        raise ValueError(f"not an RFC 3339 timestamp: {value!r}")
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        raise ValueError(f"timestamp has no UTC offset: {value!r}")
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _document_from_record(record: object) -> Document:
    if not isinstance(record, dict):
        raise ValueError("record is not a JSON object")
    for key in DOCUMENT_FIELDS:
        if key not in record or record[key] is None:
            raise ValueError(f"missing field {key!r}")
    doc_id, account_id, text = record["id"], record["account_id"], record["text"]
    if not isinstance(doc_id, str) or not isinstance(account_id, str):
        raise ValueError("id and account_id must be strings")
    if not isinstance(text, str):
        raise ValueError("text must be a string")
    return Document(doc_id, account_id, parse_timestamp(record["created_at"]), text)


def ingest_documents(path: str | Path, account_ids: Iterable[str] | None = None) -> IngestResult:
    """Read a JSON-lines archive.

    Invalid records (bad JSON, missing fields, duplicate ids, unknown
    account when ``account_ids`` is given) become :class:`Reject` entries.
    Blank lines are ignored. An unreadable file raises :class:`IngestError`.
    """
    known = set(account_ids) if account_ids is not None else None
    docs: list[Document] = []
    rejects: list[Reject] = []
    accepted_lines: list[int] = []
    seen: set[str] = set()
    try:
        with Path(path).open(encoding="utf-8") as fh:
            lines = fh.readlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestError(f"cannot read documents file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        doc_id = ""
        try:
            record = json.loads(line)
            if isinstance(record, dict) and isinstance(record.get("id"), str):
                doc_id = record["id"]
            doc = _document_from_record(record)
            if doc.id in seen:
                raise ValueError(f"duplicate document id {doc.id!r}")
            if known is not None and doc.account_id not in known:
                raise ValueError(f"unknown account {doc.account_id!r}")
        except ValueError as exc:  # JSONDecodeError is a ValueError
            rejects.append(Reject(lineno, doc_id, str(exc)))
            continue
        seen.add(doc.id)
        docs.append(doc)
        accepted_lines.append(lineno)
    return IngestResult(docs, rejects, accepted_lines)


def dump_documents(docs: Iterable[Document], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for d in docs:
            record = {"id": d.id, "account_id": d.account_id,
                      "created_at": format_timestamp(d.timestamp), "text": d.text}
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def ingest_accounts(path: str | Path) -> list[Account]:
    """Read ``id,handle,display_name,gender`` CSV rows.

    Unknown gender tokens fall back to ``unspecified`` with a warning;
    duplicate ids or empty handles raise :class:`IngestError`.
    """
    try:
        with Path(path).open(encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestError(f"cannot read accounts file {path}: {exc}") from exc
    if not rows:
        raise IngestError(f"{path}: empty accounts file (missing header)")
    if [h.strip() for h in rows[0]] != ACCOUNT_HEADER:
        raise IngestError(f"{path}: header must be {','.join(ACCOUNT_HEADER)}")
    accounts: list[Account] = []
    seen: set[str] = set()
    for lineno, row in enumerate(rows[1:], 2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) != len(ACCOUNT_HEADER):
            raise IngestError(f"{path}:{lineno}: expected {len(ACCOUNT_HEADER)} fields, got {len(row)}")
        acc_id, handle, name, gender_raw = (cell.strip() for cell in row)
        if acc_id in seen:
            raise IngestError(f"{path}:{lineno}: duplicate account id {acc_id!r}")
        try:
            gender = Gender(gender_raw.lower())
        except ValueError:
            log.warning("%s:%d: unknown gender %r, using 'unspecified'", path, lineno, gender_raw)
            gender = Gender.UNSPECIFIED
        try:
            accounts.append(Account(acc_id, handle, name, gender))
        except ValueError as exc:
            raise IngestError(f"{path}:{lineno}: {exc}") from None
        seen.add(acc_id)
    return accounts


def filter_window(docs: Iterable[Document], start: datetime, end: datetime) -> list[Document]:
    """Documents with ``start <= timestamp < end``, order preserved."""
    if not start < end:
        raise ValueError(f"window start {start} is not before end {end}")
    return [d for d in docs if start <= d.timestamp < end]


# --------------------------------------------------------------------------
# fetchers


class Fetcher(Protocol):
    def fetch(self, handle: str, start: datetime, end: datetime) -> Iterator[Document]:
        ...


def _handle_key(handle: str) -> str:
    return handle.strip().lstrip("@").lower()


class MemoryFetcher:
    """Serves documents already held in memory."""

    def __init__(self, documents: Iterable[Document], accounts: Iterable[Account]):
        self.documents = tuple(documents)
        self._ids_by_handle: dict[str, set[str]] = {}
        for acc in accounts:
            self._ids_by_handle.setdefault(_handle_key(acc.handle), set()).add(acc.id)

    def fetch(self, handle: str, start: datetime, end: datetime) -> Iterator[Document]:
        if not start < end:
            raise ValueError(f"window start {start} is not before end {end}")
        ids = self._ids_by_handle.get(_handle_key(handle), set())
        return iter(filter_window((d for d in self.documents if d.account_id in ids), start, end))


class FileFetcher(MemoryFetcher):
    """Serves documents from a JSON-lines archive; invalid records are dropped."""

    def __init__(self, archive_path: str | Path, accounts: Iterable[Account]):
        accounts = list(accounts)
        result = ingest_documents(archive_path, [a.id for a in accounts])
        super().__init__(result.documents, accounts)
        self.archive_path = Path(archive_path)
        self.rejects = result.rejects


def file_fetcher(archive_path: str | Path, accounts: Iterable[Account]) -> FileFetcher:
    return FileFetcher(archive_path, accounts)
