"""Run the protocol between processes: newline-delimited records over TCP.

The prover connects, both sides exchange hello records, then each round is
commit -> challenge -> response; the verifier closes with a result record.
Any mismatch (protocol version, platform descriptor, round count, law
mode), malformed or oversized line, timeout, or connection loss rejects
the session with a diagnostic instead of guessing.

Both peers append every line they send or receive, in protocol order, to
their transcript, so the two transcript files of one session are
byte-identical.

Exit-status convention used by the CLI: 0 accept, 1 reject, 2 transport or
protocol error.
"""

from __future__ import annotations

import random
import socket
from dataclasses import dataclass, field

from . import wire
from .platforms import LdPlatform
from .protocol import CheatProver, KeyPair, ProtocolConfig, Prover, Verifier
from .wire import (
    MAX_LINE_BYTES,
    Challenge,
    Commit,
    Hello,
    MessageError,
    Response,
    Result,
    WireMessage,
    decode_message,
    encode_message,
)

__all__ = ["SessionError", "SessionOutcome", "serve", "prove", "parse_address"]

DEFAULT_TIMEOUT = 30.0


class SessionError(RuntimeError):
    """The session could not be completed; the message says why."""


@dataclass
class SessionOutcome:
    accepted: bool
    lines: list[str] = field(default_factory=list)
    reason: str | None = None


def parse_address(text: str) -> tuple[str, int]:
    host, _, port = text.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"address must be host:port, got {text!r}")
    return host, int(port)


class _LineChannel:
    """Line-framed duplex stream with a size limit and logging."""

    def __init__(self, sock: socket.socket, timeout: float) -> None:
        sock.settimeout(timeout)
        self._sock = sock
        self._reader = sock.makefile("rb")
        self.log: list[str] = []

    def send(self, message: WireMessage) -> None:
        line = encode_message(message)
        try:
            self._sock.sendall(line.encode())
        except OSError as exc:
            raise SessionError(f"connection lost while sending: {exc}") from exc
        self.log.append(line)

    def recv(self) -> WireMessage:
        try:
            raw = self._reader.readline(MAX_LINE_BYTES + 1)
        except socket.timeout as exc:
            raise SessionError("timed out waiting for the peer") from exc
        except OSError as exc:
            raise SessionError(f"connection lost while receiving: {exc}") from exc
        if not raw:
            raise SessionError("peer closed the connection mid-session")
        if len(raw) > MAX_LINE_BYTES:
            raise SessionError("incoming line exceeds the size limit")
        if not raw.endswith(b"\n"):
            raise SessionError(f"truncated message stream at {raw[:80]!r}")
        try:
            line = raw.decode()
            message = decode_message(line)
        except (UnicodeDecodeError, MessageError) as exc:
            raise SessionError(f"malformed line {raw[:80]!r}: {exc}") from exc
        self.log.append(line)
        return message

    def close(self) -> None:
        try:
            self._reader.close()
        finally:
            self._sock.close()


def _expect(message: WireMessage, kind: type) -> WireMessage:
    if not isinstance(message, kind):
        raise SessionError(
            f"expected a {kind.__name__.lower()} message, got {message!r}")
    return message


def _check_hello(mine: Hello, theirs: Hello) -> str | None:
    if theirs.version != mine.version:
        return f"protocol version mismatch: {theirs.version!r} != {mine.version!r}"
    if theirs.platform != mine.platform:
        return f"platform mismatch: {theirs.platform!r} != {mine.platform!r}"
    if theirs.rounds != mine.rounds:
        return f"round count mismatch: {theirs.rounds} != {mine.rounds}"
    if theirs.law_mode != mine.law_mode:
        return f"law mode mismatch: {theirs.law_mode!r} != {mine.law_mode!r}"
    return None


def _verifier_session(channel: _LineChannel, platform: LdPlatform,
                      config: ProtocolConfig, keypair: KeyPair,
                      rng: random.Random) -> SessionOutcome:
    my_hello = Hello(platform=config.platform, rounds=config.rounds,
                     law_mode=config.law_mode)
    theirs = _expect(channel.recv(), Hello)
    problem = _check_hello(my_hello, theirs)
    if problem is not None:
        channel.send(Result(accept=False, reason=problem))
        return SessionOutcome(accepted=False, lines=channel.log, reason=problem)
    channel.send(my_hello)
    verifier = Verifier(platform, keypair.public_p, keypair.public_p_prime)
    accepted = True
    for _ in range(config.rounds):
        commit = _expect(channel.recv(), Commit)
        try:
            verifier.receive_commit(
                platform.decode(commit.x), platform.decode(commit.x_prime))
            c = verifier.challenge(rng)
            channel.send(Challenge(c=c))
            response = _expect(channel.recv(), Response)
            ok = verifier.receive_response(platform.decode(response.y))
        except ValueError as exc:
            raise SessionError(f"undecodable element from the prover: {exc}") from exc
        if not ok:
            accepted = False
    channel.send(Result(accept=accepted))
    return SessionOutcome(accepted=accepted, lines=channel.log)


def _prover_session(channel: _LineChannel, platform: LdPlatform,
                    config: ProtocolConfig, prover: Prover | CheatProver,
                    rng: random.Random) -> SessionOutcome:
    my_hello = Hello(platform=config.platform, rounds=config.rounds,
                     law_mode=config.law_mode)
    channel.send(my_hello)
    reply = channel.recv()
    if isinstance(reply, Result):
        return SessionOutcome(accepted=reply.accept, lines=channel.log,
                              reason=reply.reason)
    theirs = _expect(reply, Hello)
    problem = _check_hello(my_hello, theirs)
    if problem is not None:
        raise SessionError(problem)
    for _ in range(config.rounds):
        x, x_prime = prover.commit(rng)
        channel.send(Commit(x=platform.encode(x), x_prime=platform.encode(x_prime)))
        challenge = _expect(channel.recv(), Challenge)
        y = prover.respond(challenge.c)
        channel.send(Response(y=platform.encode(y)))
    result = _expect(channel.recv(), Result)
    return SessionOutcome(accepted=result.accept, lines=channel.log,
                          reason=result.reason)


def serve(listen: tuple[str, int], config: ProtocolConfig, keypair: KeyPair,
          rng: random.Random, *, transcript_path: str | None = None,
          timeout: float = DEFAULT_TIMEOUT,
          ready_callback=None, platform: LdPlatform | None = None) -> SessionOutcome:
    """Accept one connection, verify one session, return the outcome.

    ``ready_callback``, when given, receives the bound (host, port) once
    the socket is listening; handy for ephemeral ports in tests.
    """
    platform = config.resolve_platform(platform)
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as server:
        server.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        server.bind(listen)
        server.listen(1)
        server.settimeout(timeout)
        if ready_callback is not None:
            ready_callback(server.getsockname())
        try:
            conn, _addr = server.accept()
        except socket.timeout as exc:
            raise SessionError("no prover connected before the timeout") from exc
        channel = _LineChannel(conn, timeout)
        try:
            outcome = _verifier_session(channel, platform, config, keypair, rng)
        except SessionError:
            # tell the peer why before giving up, best effort
            try:
                channel.send(Result(accept=False, reason="session aborted"))
            except SessionError:
                pass
            raise
        finally:
            if transcript_path is not None:
                wire.write_transcript(transcript_path, channel.log)
            channel.close()
    return outcome


def prove(connect: tuple[str, int], config: ProtocolConfig, keypair: KeyPair,
          rng: random.Random, *, transcript_path: str | None = None,
          timeout: float = DEFAULT_TIMEOUT,
          platform: LdPlatform | None = None) -> SessionOutcome:
    """Connect to a verifier and run one session as the prover."""
    platform = config.resolve_platform(platform)
    prover = Prover(platform, keypair, config.law_mode)
    try:
        sock = socket.create_connection(connect, timeout=timeout)
    except OSError as exc:
        raise SessionError(f"cannot connect to {connect}: {exc}") from exc
    channel = _LineChannel(sock, timeout)
    try:
        outcome = _prover_session(channel, platform, config, prover, rng)
    finally:
        if transcript_path is not None:
            wire.write_transcript(transcript_path, channel.log)
        channel.close()
    return outcome
