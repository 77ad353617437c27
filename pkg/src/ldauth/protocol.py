"""Three-exchange challenge-response authentication over a platform.

Key setup: the secret is an element s, the public key a pair (p, p') with
p' = s op p.  One round:

* the prover draws an ephemeral r and commits x = r op p, x' = r op p';
* the verifier sends a random bit c;
* for c = 0 the prover reveals y = r and the verifier checks
  x = y op p and x' = y op p';
* for c = 1 the prover sends y = r op s and the verifier checks
  x' = y op x.

The c = 1 check is correct exactly because the operation is left
self-distributive: r op (s op p) = (r op s) op (r op p).  In CD mode the
prover instead answers y = s op r and the same check is backed by the
central duplication law.  A session repeats the round k times and accepts
iff every round does; an honest prover is always accepted, a prover who
cannot answer both challenges survives a round with probability 1/2 (plus
whatever operation collisions the platform allows).

Commitments are sent as raw elements, exactly as the scheme does; there is
no hash layer, no non-interactive variant, and nothing here is hardened
for real-world use.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from .platforms import LdPlatform, parse_platform

__all__ = [
    "LAW_MODES",
    "ProtocolOrderError",
    "ProtocolConfig",
    "KeyPair",
    "RoundRecord",
    "Transcript",
    "keygen",
    "Prover",
    "CheatProver",
    "Verifier",
    "verifier_round",
    "run_session",
    "cheat_session",
]

LAW_MODES = ("LD", "CD")


class ProtocolOrderError(RuntimeError):
    """A protocol message arrived out of order."""


@dataclass(frozen=True)
class ProtocolConfig:
    """Session parameters; the platform is referenced by descriptor."""

    platform: str
    rounds: int = 20
    law_mode: str = "LD"
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.rounds < 1:
            raise ValueError("a session needs at least one round")
        if self.law_mode not in LAW_MODES:
            raise ValueError(f"law mode must be one of {LAW_MODES}")

    def resolve_platform(self, platform: LdPlatform | None = None) -> LdPlatform:
        """Parse the descriptor, or validate a caller-supplied platform."""
        if platform is None:
            platform = parse_platform(self.platform)
        elif platform.name != self.platform:
            raise ValueError(
                f"platform {platform.name} does not match descriptor {self.platform}"
            )
        if self.law_mode not in platform.laws:
            raise ValueError(
                f"{platform.name} is not known to satisfy {self.law_mode}; "
                f"run a law check first"
            )
        return platform


@dataclass(frozen=True)
class KeyPair:
    """Secret s plus public pair (p, p' = s op p)."""

    platform: str
    secret: Any
    public_p: Any
    public_p_prime: Any

    def public_only(self) -> "KeyPair":
        return KeyPair(self.platform, None, self.public_p, self.public_p_prime)


def keygen(platform: LdPlatform, rng: random.Random,
           secret_hint: int | None = None, public_hint: int | None = None) -> KeyPair:
    """Sample s and p per the platform, derive p' = s op p."""
    s = platform.sample(rng, secret_hint)
    p = platform.sample(rng, public_hint)
    return KeyPair(
        platform=platform.name,
        secret=s,
        public_p=p,
        public_p_prime=platform.op(s, p),
    )


@dataclass
class RoundRecord:
    x: Any
    x_prime: Any
    challenge: int
    response: Any
    accepted: bool


@dataclass
class Transcript:
    platform: str
    law_mode: str
    rounds: list[RoundRecord] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return bool(self.rounds) and all(r.accepted for r in self.rounds)


class Prover:
    """Honest prover state machine; one commit/respond cycle per round.

    The ephemeral r lives only between commit and respond.
    """

    def __init__(self, platform: LdPlatform, keypair: KeyPair, law_mode: str = "LD") -> None:
        if law_mode not in LAW_MODES:
            raise ValueError(f"law mode must be one of {LAW_MODES}")
        if keypair.secret is None:
            raise ValueError("the prover needs the secret half of the key")
        self._platform = platform
        self._keypair = keypair
        self._law_mode = law_mode
        self._r: Any | None = None

    def commit(self, rng: random.Random) -> tuple[Any, Any]:
        if self._r is not None:
            raise ProtocolOrderError("commit sent twice without a response")
        self._r = self._platform.sample(rng)
        x = self._platform.op(self._r, self._keypair.public_p)
        x_prime = self._platform.op(self._r, self._keypair.public_p_prime)
        return x, x_prime

    def respond(self, challenge: int) -> Any:
        if self._r is None:
            raise ProtocolOrderError("response requested before commitment")
        if challenge not in (0, 1):
            raise ValueError("challenge must be the bit 0 or 1")
        r, self._r = self._r, None  # ephemeral erased here
        if challenge == 0:
            return r
        if self._law_mode == "LD":
            return self._platform.op(r, self._keypair.secret)
        return self._platform.op(self._keypair.secret, r)


class CheatProver:
    """Prover without the secret: guesses the challenge before committing.

    A guessed 0 commits honestly with a fresh r (and can only answer 0); a
    guessed 1 forges x' = y op x from a random y (and can only answer 1).
    On a wrong guess it answers with whatever it has; the round then fails
    unless the platform's operation happens to collide.
    """

    def __init__(self, platform: LdPlatform, public_p: Any, public_p_prime: Any) -> None:
        self._platform = platform
        self._p = public_p
        self._p_prime = public_p_prime
        self._state: tuple[int, Any, Any] | None = None

    def commit(self, rng: random.Random) -> tuple[Any, Any]:
        if self._state is not None:
            raise ProtocolOrderError("commit sent twice without a response")
        guess = rng.getrandbits(1)
        r = self._platform.sample(rng)
        x = self._platform.op(r, self._p)
        if guess == 0:
            # honest commitment from public values; only c = 0 is answerable
            x_prime = self._platform.op(r, self._p_prime)
            self._state = (0, r, None)
            return x, x_prime
        y = self._platform.sample(rng)
        x_prime = self._platform.op(y, x)
        self._state = (1, r, y)
        return x, x_prime

    def respond(self, challenge: int) -> Any:
        if self._state is None:
            raise ProtocolOrderError("response requested before commitment")
        guess, r, y = self._state
        self._state = None
        if challenge == 0 or guess == 0:
            return r
        return y


class Verifier:
    """Verifier state machine; holds only public values."""

    def __init__(self, platform: LdPlatform, public_p: Any, public_p_prime: Any) -> None:
        self._platform = platform
        self._p = public_p
        self._p_prime = public_p_prime
        self._pending: tuple[Any, Any, int] | None = None

    def receive_commit(self, x: Any, x_prime: Any) -> None:
        if self._pending is not None:
            raise ProtocolOrderError("commitment received mid-round")
        self._pending = (x, x_prime, -1)

    def challenge(self, rng: random.Random) -> int:
        if self._pending is None or self._pending[2] != -1:
            raise ProtocolOrderError("challenge requested out of order")
        c = rng.getrandbits(1)
        self._pending = (self._pending[0], self._pending[1], c)
        return c

    def receive_response(self, y: Any) -> bool:
        if self._pending is None or self._pending[2] == -1:
            raise ProtocolOrderError("response received before a challenge")
        x, x_prime, c = self._pending
        self._pending = None
        return verifier_round(self._platform, x, x_prime, c, y, self._p, self._p_prime)


def verifier_round(platform: LdPlatform, x: Any, x_prime: Any, c: int, y: Any,
                   public_p: Any, public_p_prime: Any) -> bool:
    """The round check, from public values only; identical in both modes."""
    if c == 0:
        return platform.eq(x, platform.op(y, public_p)) and platform.eq(
            x_prime, platform.op(y, public_p_prime)
        )
    if c == 1:
        return platform.eq(x_prime, platform.op(y, x))
    raise ValueError("challenge must be the bit 0 or 1")


def _drive(platform: LdPlatform, prover: Prover | CheatProver, verifier: Verifier,
           rounds: int, law_mode: str, rng: random.Random,
           stop_on_reject: bool = False) -> Transcript:
    transcript = Transcript(platform=platform.name, law_mode=law_mode)
    for _ in range(rounds):
        x, x_prime = prover.commit(rng)
        verifier.receive_commit(x, x_prime)
        c = verifier.challenge(rng)
        y = prover.respond(c)
        ok = verifier.receive_response(y)
        transcript.rounds.append(RoundRecord(x, x_prime, c, y, ok))
        if stop_on_reject and not ok:
            break
    return transcript


def run_session(config: ProtocolConfig, keypair: KeyPair, rng: random.Random,
                platform: LdPlatform | None = None) -> Transcript:
    """Drive a full honest session; accepted iff every round checks out."""
    if keypair.platform != config.platform:
        raise ValueError("key pair was generated for a different platform")
    platform = config.resolve_platform(platform)
    prover = Prover(platform, keypair, config.law_mode)
    verifier = Verifier(platform, keypair.public_p, keypair.public_p_prime)
    return _drive(platform, prover, verifier, config.rounds, config.law_mode, rng)


def cheat_session(config: ProtocolConfig, public_p: Any, public_p_prime: Any,
                  rng: random.Random, platform: LdPlatform | None = None) -> Transcript:
    """Drive a session for a prover holding only the public key.

    Short-circuits at the first rejected round; the overall verdict is
    unaffected and per-round statistics should use single-round sessions.
    """
    platform = config.resolve_platform(platform)
    cheater = CheatProver(platform, public_p, public_p_prime)
    verifier = Verifier(platform, public_p, public_p_prime)
    return _drive(platform, cheater, verifier, config.rounds, config.law_mode, rng,
                  stop_on_reject=True)
