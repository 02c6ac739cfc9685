"""
Text formats: the route description, the timeline CSV and the fixture file.

Route description, one statement per line, ``#`` starts a comment::

    pipe_radius 138          # mm, required, before any segment
    default_alpha 30         # deg, optional, roll used by bends without one
    straight 521             # length in mm
    bend 90 419 30           # angle deg, bend radius mm, optional roll deg
"""

import json
import math
import re
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional

from .model import Bend, PipeNetwork, Straight, ValidationError
from .traversal import TraversalTimeline

CSV_HEADER = "t_s,segment,v_t1,v_t2,v_t3,v_robot,D_t1,D_t2,D_t3,D_robot"
FIXTURE_FORMAT = "pipeclimber-fixtures"
FIXTURE_VERSION = 1

_TOKEN = re.compile(r"\S+")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


def _number(tok, lineno, what):
    text, col = tok
    try:
        value = float(text)
    except ValueError:
        raise ParseError(lineno, col, f"expected {what}, got {text!r}") from None
    if not math.isfinite(value):
        raise ParseError(lineno, col, f"{what} must be finite, got {text!r}")
    return value


def _roll(degrees):
    # wrap before converting so the stored radians have an exact degree spelling
    return math.radians(degrees % 360.0)


def _arity(tokens, lineno, low, high, usage):
    if not low <= len(tokens) - 1 <= high:
        col = tokens[high + 1][1] if len(tokens) - 1 > high else tokens[-1][1] + len(tokens[-1][0])
        raise ParseError(lineno, col, f"usage: {usage}")


def parse_network(text: str) -> PipeNetwork:
    """Parse a route description into a :class:`PipeNetwork`.

    Angles are read in degrees and stored in radians. Every error carries the
    1-based line and column of the offending token.
    """
    pipe_radius: Optional[float] = None
    radius_pos = (1, 1)
    default_alpha = 0.0
    seen_alpha = False
    segments = []
    positions = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if not tokens:
            continue
        keyword, col = tokens[0][0].lower(), tokens[0][1]
        if keyword == "pipe_radius":
            _arity(tokens, lineno, 1, 1, "pipe_radius <mm>")
            if pipe_radius is not None:
                raise ParseError(lineno, col, "pipe_radius given twice")
            if segments:
                raise ParseError(lineno, col, "pipe_radius must precede the segments")
            pipe_radius = _number(tokens[1], lineno, "pipe radius in mm")
            radius_pos = (lineno, tokens[1][1])
            if pipe_radius <= 0:
                raise ParseError(lineno, tokens[1][1], "pipe radius must be positive")
        elif keyword == "default_alpha":
            _arity(tokens, lineno, 1, 1, "default_alpha <deg>")
            if seen_alpha:
                raise ParseError(lineno, col, "default_alpha given twice")
            if segments:
                raise ParseError(lineno, col, "default_alpha must precede the segments")
            default_alpha = _roll(_number(tokens[1], lineno, "angle in degrees"))
            seen_alpha = True
        elif keyword == "straight":
            _arity(tokens, lineno, 1, 1, "straight <length_mm>")
            length = _number(tokens[1], lineno, "length in mm")
            try:
                segments.append(Straight(length))
            except ValidationError as exc:
                raise ParseError(lineno, tokens[1][1], str(exc)) from None
            positions.append((lineno, col))
        elif keyword == "bend":
            _arity(tokens, lineno, 2, 3, "bend <angle_deg> <radius_mm> [alpha_deg]")
            angle = math.radians(_number(tokens[1], lineno, "bend angle in degrees"))
            radius = _number(tokens[2], lineno, "bend radius in mm")
            alpha = (_roll(_number(tokens[3], lineno, "roll angle in degrees"))
                     if len(tokens) == 4 else default_alpha)
            try:
                segments.append(Bend(angle, radius, alpha))
            except ValidationError as exc:
                bad = tokens[1] if not 0 <= angle <= 2 * math.pi else tokens[2]
                raise ParseError(lineno, bad[1], str(exc)) from None
            positions.append((lineno, col))
        else:
            raise ParseError(lineno, col, f"unknown keyword {tokens[0][0]!r}")

    if not segments and pipe_radius is None:
        raise ParseError(max(lineno, 1), 1, "empty document")
    if pipe_radius is None:
        raise ParseError(1, 1, "missing 'pipe_radius <mm>' header")
    if not segments:
        raise ParseError(lineno, 1, "no segments")
    for seg, (ln, c) in zip(segments, positions):
        if isinstance(seg, Bend) and seg.bend_radius_mm <= pipe_radius:
            raise ParseError(ln, c, f"bend radius {seg.bend_radius_mm} mm must exceed "
                                    f"pipe radius {pipe_radius} mm (line {radius_pos[0]})")
    return PipeNetwork(pipe_radius, tuple(segments))


def _degrees_text(rad: float) -> str:
    """Shortest decimal degree string that parses back to exactly ``rad``.

    Every angle produced by the parser has such a string. Other radian values
    may not; they fall back to the nearest degree value.
    """
    deg = math.degrees(rad)
    exact = None
    probe = deg
    for _ in range(8):
        if math.radians(probe) == rad:
            exact = probe
            break
        probe = math.nextafter(probe, math.inf if math.radians(probe) < rad else -math.inf)
    if exact is None:
        return repr(deg)
    for places in range(17):
        text = repr(round(exact, places))
        if math.radians(float(text)) == rad:
            return text[:-2] if text.endswith(".0") else text
    return repr(exact)


def emit_network(network: PipeNetwork) -> str:
    lines = [f"pipe_radius {network.pipe_radius_mm!r}"]
    for seg in network.segments:
        if isinstance(seg, Straight):
            lines.append(f"straight {seg.length_mm!r}")
        else:
            lines.append(f"bend {_degrees_text(seg.angle_rad)} {seg.bend_radius_mm!r} "
                         f"{_degrees_text(seg.orientation_rad)}")
    return "\n".join(lines) + "\n"


def emit_timeline_csv(timeline: TraversalTimeline) -> str:
    rows = [CSV_HEADER]
    for i in range(len(timeline)):
        v = timeline.v_track[i]
        d = timeline.D_track[i]
        rows.append(
            f"{timeline.t[i]:.6f},{int(timeline.segment[i])},"
            f"{v[0]:.6f},{v[1]:.6f},{v[2]:.6f},{timeline.v_robot[i]:.6f},"
            f"{d[0]:.6f},{d[1]:.6f},{d[2]:.6f},{timeline.D_robot[i]:.6f}")
    return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class FixtureCase:
    alpha_deg: float
    theoretical: Dict[str, float]
    experimental: Dict[str, float]
    reported_error: Dict[str, float]
    reported_pass: Dict[str, bool]


@dataclass(frozen=True)
class FixtureSet:
    network: PipeNetwork
    input_rpm: float
    least_count_mm: float
    cases: List[FixtureCase]


def load_fixtures(text: str, network_text: Optional[str] = None) -> FixtureSet:
    """Read a fixture file (JSON). The route comes inline or from ``network_text``."""
    doc = json.loads(text)
    if doc.get("format") != FIXTURE_FORMAT:
        raise ValidationError(f"not a {FIXTURE_FORMAT} document")
    if doc.get("version") != FIXTURE_VERSION:
        raise ValidationError(f"unsupported fixture version {doc.get('version')!r}")
    if network_text is None:
        network_text = doc["network"]
    cases = [FixtureCase(float(c["alpha_deg"]),
                         {k: float(v) for k, v in c["theoretical"].items()},
                         {k: float(v) for k, v in c["experimental"].items()},
                         {k: float(v) for k, v in c.get("reported_error", {}).items()},
                         {k: bool(v) for k, v in c.get("reported_pass", {}).items()})
             for c in doc["cases"]]
    return FixtureSet(parse_network(network_text), float(doc["input_rpm"]),
                      float(doc["least_count_mm"]), cases)


def reference_network_text() -> str:
    return resources.files("pipeclimber").joinpath("data/reference_network.txt").read_text()


def reference_fixtures_text() -> str:
    return resources.files("pipeclimber").joinpath("data/table2_fixtures.json").read_text()


def reference_network() -> PipeNetwork:
    return parse_network(reference_network_text())


def reference_fixtures() -> FixtureSet:
    return load_fixtures(reference_fixtures_text())
