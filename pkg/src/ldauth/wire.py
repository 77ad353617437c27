"""Canonical wire encoding plus key and transcript files.

One message per line: a JSON object with a mandatory ``"type"`` tag,
serialized canonically (sorted keys, no spaces), UTF-8, newline
terminated.  Five types exist:

    {"type":"hello","version":"1","platform":...,"rounds":k,"law_mode":...}
    {"type":"commit","x":...,"x_prime":...}
    {"type":"challenge","c":0|1}
    {"type":"response","y":...}
    {"type":"result","accept":bool}          (optional "reason" string)

Element payloads (x, x', y and the key file fields) are strings in the
owning platform's canonical text encoding: a signed-integer list such as
``"[1, 2, -1]"`` for braid words, a decimal integer for Laver tables and
finite magmas.  The wire layer itself never interprets them, which keeps
messages decodable without knowing the platform.

A transcript file is simply every session line in protocol order; both
peers of a session therefore persist byte-identical files.  Key files are
small JSON documents carrying the platform descriptor and encoded
elements; the secret file is the public file plus the secret.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Union

from .platforms import LdPlatform, parse_platform
from .protocol import KeyPair, Transcript, verifier_round

__all__ = [
    "PROTOCOL_VERSION",
    "MAX_LINE_BYTES",
    "MessageError",
    "Hello",
    "Commit",
    "Challenge",
    "Response",
    "Result",
    "WireMessage",
    "encode_message",
    "decode_message",
    "save_key_file",
    "load_key_file",
    "transcript_lines",
    "write_transcript",
    "replay_lines",
]

PROTOCOL_VERSION = "1"
MAX_LINE_BYTES = 1 << 20


class MessageError(ValueError):
    """Malformed, oversized, or out-of-spec wire data."""


@dataclass(frozen=True)
class Hello:
    platform: str
    rounds: int
    law_mode: str
    version: str = PROTOCOL_VERSION


@dataclass(frozen=True)
class Commit:
    x: str
    x_prime: str


@dataclass(frozen=True)
class Challenge:
    c: int


@dataclass(frozen=True)
class Response:
    y: str


@dataclass(frozen=True)
class Result:
    accept: bool
    reason: str | None = None


WireMessage = Union[Hello, Commit, Challenge, Response, Result]


def encode_message(message: WireMessage) -> str:
    """One canonical JSON line (newline included)."""
    if isinstance(message, Hello):
        obj: dict[str, Any] = {
            "type": "hello",
            "version": message.version,
            "platform": message.platform,
            "rounds": message.rounds,
            "law_mode": message.law_mode,
        }
    elif isinstance(message, Commit):
        obj = {"type": "commit", "x": message.x, "x_prime": message.x_prime}
    elif isinstance(message, Challenge):
        if message.c not in (0, 1):
            raise MessageError("challenge must be the bit 0 or 1")
        obj = {"type": "challenge", "c": message.c}
    elif isinstance(message, Response):
        obj = {"type": "response", "y": message.y}
    elif isinstance(message, Result):
        obj = {"type": "result", "accept": bool(message.accept)}
        if message.reason is not None:
            obj["reason"] = message.reason
    else:
        raise MessageError(f"not a wire message: {message!r}")
    line = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    if len(line.encode()) > MAX_LINE_BYTES:
        raise MessageError("encoded message exceeds the line size limit")
    return line


def _field(obj: dict[str, Any], key: str, kind: type) -> Any:
    if key not in obj:
        raise MessageError(f"message lacks field {key!r}: {obj}")
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise MessageError(f"field {key!r} must be an integer")
    if not isinstance(value, kind):
        raise MessageError(f"field {key!r} has wrong type: {value!r}")
    return value


_EXPECTED_KEYS = {
    "hello": {"type", "version", "platform", "rounds", "law_mode"},
    "commit": {"type", "x", "x_prime"},
    "challenge": {"type", "c"},
    "response": {"type", "y"},
    "result": {"type", "accept", "reason"},
}


def decode_message(line: str) -> WireMessage:
    """Parse and validate one line; inverse of :func:`encode_message`."""
    if len(line.encode()) > MAX_LINE_BYTES:
        raise MessageError("line exceeds the size limit")
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MessageError(f"line is not valid JSON: {line!r}") from exc
    if not isinstance(obj, dict):
        raise MessageError(f"message must be a JSON object: {line!r}")
    mtype = obj.get("type")
    if mtype not in _EXPECTED_KEYS:
        raise MessageError(f"unknown message type {mtype!r}")
    extra = set(obj) - _EXPECTED_KEYS[mtype]
    if extra:
        raise MessageError(f"unexpected fields {sorted(extra)} in {mtype} message")
    if mtype == "hello":
        return Hello(
            platform=_field(obj, "platform", str),
            rounds=_field(obj, "rounds", int),
            law_mode=_field(obj, "law_mode", str),
            version=_field(obj, "version", str),
        )
    if mtype == "commit":
        return Commit(x=_field(obj, "x", str), x_prime=_field(obj, "x_prime", str))
    if mtype == "challenge":
        c = _field(obj, "c", int)
        if c not in (0, 1):
            raise MessageError("challenge must be the bit 0 or 1")
        return Challenge(c=c)
    if mtype == "response":
        return Response(y=_field(obj, "y", str))
    accept = _field(obj, "accept", bool)
    reason = obj.get("reason")
    if reason is not None and not isinstance(reason, str):
        raise MessageError("result reason must be a string")
    return Result(accept=accept, reason=reason)


def save_key_file(path: str | Path, platform: LdPlatform, keypair: KeyPair,
                  include_secret: bool) -> None:
    """Write a key file; with the secret for the prover, without for anyone."""
    doc: dict[str, Any] = {
        "format": "ldauth-key",
        "version": PROTOCOL_VERSION,
        "kind": "secret" if include_secret else "public",
        "platform": keypair.platform,
        "p": platform.encode(keypair.public_p),
        "p_prime": platform.encode(keypair.public_p_prime),
    }
    if include_secret:
        if keypair.secret is None:
            raise ValueError("key pair holds no secret")
        doc["s"] = platform.encode(keypair.secret)
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_key_file(path: str | Path) -> tuple[LdPlatform, KeyPair]:
    """Read a key file back; validates p' = s op p when the secret is there."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MessageError(f"key file {path} is not valid JSON") from exc
    if not isinstance(doc, dict) or doc.get("format") != "ldauth-key":
        raise MessageError(f"{path} is not a key file")
    if doc.get("version") != PROTOCOL_VERSION:
        raise MessageError(f"unsupported key file version {doc.get('version')!r}")
    platform = parse_platform(doc["platform"])
    p = platform.decode(doc["p"])
    p_prime = platform.decode(doc["p_prime"])
    secret = platform.decode(doc["s"]) if "s" in doc else None
    if secret is not None and not platform.eq(p_prime, platform.op(secret, p)):
        raise MessageError(f"key file {path} is inconsistent: p' != s op p")
    return platform, KeyPair(
        platform=doc["platform"], secret=secret, public_p=p, public_p_prime=p_prime
    )


def transcript_lines(transcript: Transcript, platform: LdPlatform,
                     rounds: int | None = None) -> list[str]:
    """Render an in-process session the way a wire session logs it."""
    hello = Hello(
        platform=transcript.platform,
        rounds=rounds if rounds is not None else len(transcript.rounds),
        law_mode=transcript.law_mode,
    )
    lines = [encode_message(hello), encode_message(hello)]
    for rec in transcript.rounds:
        lines.append(encode_message(Commit(
            x=platform.encode(rec.x), x_prime=platform.encode(rec.x_prime))))
        lines.append(encode_message(Challenge(c=rec.challenge)))
        lines.append(encode_message(Response(y=platform.encode(rec.response))))
    lines.append(encode_message(Result(accept=transcript.accepted)))
    return lines


def write_transcript(path: str | Path, lines: Iterable[str]) -> None:
    Path(path).write_text("".join(lines))


def replay_lines(lines: Iterable[str], platform: LdPlatform,
                 public_p: Any, public_p_prime: Any) -> bool:
    """Re-run the verifier checks over a logged session.

    Returns the recomputed verdict and insists it matches the logged
    result line; a mismatch raises :class:`MessageError`.
    """
    messages = [decode_message(line) for line in lines]
    verdicts: list[bool] = []
    pending: tuple[str, str] | None = None
    challenge: int | None = None
    logged: bool | None = None
    for msg in messages:
        if isinstance(msg, Hello):
            if msg.platform != platform.name:
                raise MessageError(
                    f"transcript platform {msg.platform!r} != {platform.name!r}")
        elif isinstance(msg, Commit):
            pending = (msg.x, msg.x_prime)
            challenge = None
        elif isinstance(msg, Challenge):
            if pending is None:
                raise MessageError("challenge without a commitment")
            challenge = msg.c
        elif isinstance(msg, Response):
            if pending is None or challenge is None:
                raise MessageError("response without commitment and challenge")
            x, x_prime = pending
            verdicts.append(verifier_round(
                platform,
                platform.decode(x), platform.decode(x_prime),
                challenge, platform.decode(msg.y),
                public_p, public_p_prime,
            ))
            pending = None
            challenge = None
        elif isinstance(msg, Result):
            logged = msg.accept
    recomputed = bool(verdicts) and all(verdicts)
    if logged is not None and logged != recomputed:
        raise MessageError(
            f"logged verdict {logged} disagrees with replayed verdict {recomputed}")
    return recomputed
