"""
Utility functions for IsoKin.

This module provides the constants, settings loading and small parsing and
file helpers used throughout the package.
"""
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from dotenv import find_dotenv, load_dotenv

from ..errors import ConfigError, InvalidOrdering

# Constants
FORMAT_VERSION = "1"
DEFAULT_TOL = 1e-9
DEFAULT_ENUM_CAP = 8
DEFAULT_SEED = 0
UNITS = ("dimensionless", "length")

ANGLE_SUFFIXES = {"deg": math.pi / 180.0, "rad": 1.0}


@dataclass(frozen=True)
class Settings:
    """Process-wide defaults, read from the environment (and .env)."""
    tol: float = DEFAULT_TOL
    enum_cap: int = DEFAULT_ENUM_CAP
    seed: int = DEFAULT_SEED
    log_file: Optional[str] = None
    log_level: str = "INFO"


def _env_number(name: str, default, cast):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not a valid {cast.__name__}")


def load_settings(dotenv: bool = True) -> Settings:
    """
    Build the settings from environment variables.

    Args:
        dotenv: Whether to load a .env file first (variables already set in
            the environment are not overridden)

    Returns:
        The Settings value
    """
    if dotenv:
        load_dotenv(find_dotenv(usecwd=True))

    tol = _env_number("ISOKIN_TOL", DEFAULT_TOL, float)
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ConfigError(f"ISOKIN_TOL must be a positive finite number, got {tol}")
    enum_cap = _env_number("ISOKIN_ENUM_CAP", DEFAULT_ENUM_CAP, int)
    if enum_cap < 2:
        raise ConfigError(f"ISOKIN_ENUM_CAP must be at least 2, got {enum_cap}")

    return Settings(
        tol=tol,
        enum_cap=enum_cap,
        seed=_env_number("ISOKIN_SEED", DEFAULT_SEED, int),
        log_file=os.getenv("ISOKIN_LOG_FILE") or None,
        log_level=(os.getenv("ISOKIN_LOG_LEVEL") or "INFO").upper(),
    )


# Angles

def reduce_angle(angle: float) -> float:
    """Map an angle in radians onto (-pi, pi]."""
    reduced = math.pi - math.fmod(math.pi - angle, 2.0 * math.pi)
    if reduced > math.pi:
        reduced -= 2.0 * math.pi
    elif reduced <= -math.pi:
        reduced += 2.0 * math.pi
    return reduced


def parse_angle(text: Union[str, float]) -> float:
    """
    Parse an angle such as "45deg", "0.25rad" or "0.25" (radians).

    Args:
        text: The angle text

    Returns:
        The angle in radians
    """
    if isinstance(text, (int, float)):
        return float(text)
    value = text.strip().lower()
    factor = 1.0
    for suffix, scale in ANGLE_SUFFIXES.items():
        if value.endswith(suffix):
            value = value[: -len(suffix)].strip()
            factor = scale
            break
    try:
        angle = float(value) * factor
    except ValueError:
        raise ValueError(f"invalid angle {text!r}; use e.g. 45deg or 0.785rad")
    if not math.isfinite(angle):
        raise ValueError(f"angle {text!r} is not finite")
    return angle


def parse_angles(text: str) -> Tuple[float, ...]:
    """Parse a comma-separated angle list."""
    return tuple(parse_angle(part) for part in text.split(",") if part.strip())


# Points and orderings

def parse_point(text: str) -> Tuple[float, float]:
    """Parse "x,y" into a coordinate pair."""
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise ValueError(f"invalid point {text!r}; expected x,y")
    x, y = (float(p) for p in parts)
    return x, y


def parse_ordering(text: Union[str, Sequence[int]], n: Optional[int] = None) -> Tuple[int, ...]:
    """
    Parse a 1-based ordering ("1,2,3,4" or a list) into 0-based indices.

    Args:
        text: The ordering as text or as a sequence of 1-based indices
        n: Expected number of points, when known

    Returns:
        The 0-based ordering tuple
    """
    if isinstance(text, str):
        try:
            one_based = [int(p) for p in text.replace(" ", "").split(",") if p]
        except ValueError:
            raise InvalidOrdering(f"invalid ordering {text!r}")
    else:
        one_based = [int(p) for p in text]
    ordering = tuple(i - 1 for i in one_based)
    check_ordering(ordering, n if n is not None else len(ordering))
    return ordering


def check_ordering(ordering: Sequence[int], n: int) -> None:
    """Raise InvalidOrdering unless ordering is a permutation of range(n)."""
    if len(ordering) != n or sorted(ordering) != list(range(n)):
        shown = ",".join(str(i + 1) for i in ordering)
        raise InvalidOrdering(f"ordering ({shown}) is not a permutation of 1..{n}")


def format_ordering(ordering: Sequence[int]) -> str:
    """Render a 0-based ordering the way users write it, 1-based."""
    return ",".join(str(i + 1) for i in ordering)


# Files

def atomic_write(path: str, data: Union[str, bytes]) -> None:
    """
    Write a file by writing a temporary sibling and renaming it into place.

    Args:
        path: Destination path
        data: Text (written as UTF-8) or bytes
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    payload = data.encode("utf-8") if isinstance(data, str) else data
    fd, tmp_path = tempfile.mkstemp(prefix=".isokin-", dir=directory)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
