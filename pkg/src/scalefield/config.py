"""Run configuration for the command-line harness.

Config files are TOML: ``[section]`` headers, ``key = value`` lines, arrays
in brackets.  Every section is optional; an empty file selects the defaults
for the command given on the command line.

.. code-block:: toml

    command = "convergence"
    seed = 42

    [lattice]
    dim = 2
    sizes = [64, 64]
    spacing = [0.05, 0.05]

    [levels]                 # complex numbers as strings: "2i", "1+0.5i"
    s = "1"
    t = "2i"

    [couplings]
    g = 2.0

    [fields]                 # catalog selections, names or inline tables
    gamma = ["linear", {name = "gaussian", amp = 0.4, width = 0.5}]

    [convergence]
    configs = ["scalar_plane_wave_1d"]
    steps = [0.01, 0.005, 0.0025]

    [gauge]
    maps = ["axis3_linear"]
    seeds = 100
    sites = 100

    [axioms]
    pairs = 1000
    triples = 1000

    [tolerances]
    covariance = 1e-10

    [output]
    path = "reports"
    format = "csv"
"""

from __future__ import annotations

import difflib
import math
import re
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .bundle import FIELD_CATALOG
from .convergence import CONVERGENCE_CASES, DEFAULT_STEPS
from .gauge import GAUGE_MAP_NAMES

COMMANDS = ("axioms", "scale-demo", "convergence", "curl-diagnostic", "gauge-check", "reduce-check")
FORMATS = ("csv", "json")
DEFAULT_SEED = 20240101

DEFAULT_TOLERANCES = {
    "field_axioms": 1e-12,
    "map_laws": 1e-12,
    "noncommutation": 1e-12,
    "vector_axioms": 1e-12,
    "curl_factor": 5.0,
    "covariance": 1e-10,
    "u1": 1e-12,
    "reduction": 1e-12,
    "order_low": 0.9,
    "order_high": 1.1,
    "linear_model_factor": 10.0,
}

_SECTIONS = {
    None: {"command", "seed"},
    "lattice": {"dim", "sizes", "spacing"},
    "levels": {"s", "t", "a", "b"},
    "couplings": {"g_a", "g_b", "g_g", "g_d", "g", "g1"},
    "fields": {"gamma", "phi"},
    "convergence": {"configs", "steps"},
    "gauge": {"maps", "seeds", "sites", "use_E", "dim"},
    "axioms": {"pairs", "triples"},
    "reduce": {"cases"},
    "tolerances": set(DEFAULT_TOLERANCES),
    "output": {"path", "format"},
}


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class FieldSelection:
    name: str
    params: tuple = ()

    @property
    def kwargs(self) -> dict:
        return dict(self.params)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = DEFAULT_SEED
    lattice_dim: int | None = None
    lattice_sizes: tuple | None = None
    lattice_spacing: tuple | None = None
    s: complex = 1 + 0j
    t: complex = 2j
    a: complex = 2 + 0j
    b: complex = 3 + 0j
    couplings: tuple = ()
    gamma: tuple = ()
    phi: tuple = ()
    configs: tuple = ()
    steps: tuple = DEFAULT_STEPS
    gauge_maps: tuple = GAUGE_MAP_NAMES
    gauge_seeds: int = 100
    gauge_sites: int = 100
    gauge_dim: int = 2
    use_E: bool = True
    pairs: int = 1000
    triples: int = 1000
    reduce_cases: int = 100
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    out: str = "."
    format: str = "csv"


def _line_of(text: str, key: str, section: str | None) -> int | None:
    current = None
    header = re.compile(r"^\s*\[\s*([A-Za-z0-9_.-]+)\s*\]")
    keyline = re.compile(rf"^\s*{re.escape(key)}\s*=")
    for i, line in enumerate(text.splitlines(), 1):
        m = header.match(line)
        if m:
            current = m.group(1)
            continue
        if current == section and keyline.match(line):
            return i
    return None


def parse_complex(value) -> complex:
    """Accept numbers, ``[re, im]`` pairs and strings like ``"2i"`` or ``"1-0.5j"``."""
    if isinstance(value, bool):
        raise ValueError("boolean is not a number")
    if isinstance(value, (int, float)):
        z = complex(value)
    elif isinstance(value, list) and len(value) == 2:
        z = complex(float(value[0]), float(value[1]))
    elif isinstance(value, str):
        s = value.strip().replace(" ", "").replace("i", "j")
        if s.startswith("j") or s.startswith("-j") or s.startswith("+j"):
            s = s.replace("j", "1j", 1)
        s = re.sub(r"([+-])j", r"\g<1>1j", s)
        z = complex(s)
    else:
        raise ValueError(f"cannot read {value!r} as a complex number")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("non-finite number")
    return z


def _suggest(name: str, known) -> str:
    close = difflib.get_close_matches(name, list(known), n=1)
    return f"; did you mean {close[0]!r}?" if close else f"; known: {', '.join(sorted(known))}"


def _finite(x) -> bool:
    if isinstance(x, bool):
        return True
    if isinstance(x, (int, float)):
        return math.isfinite(x)
    if isinstance(x, list):
        return all(_finite(v) for v in x)
    if isinstance(x, dict):
        return all(_finite(v) for v in x.values())
    return True


def parse_config(text: str, command: str | None = None) -> RunConfig:
    """Parse and validate config text; ``command`` (from the CLI) wins if given."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ConfigError(f"parse error: {exc}", int(m.group(1)) if m else None) from None

    def fail(msg, key, section=None):
        raise ConfigError(msg, _line_of(text, key, section))

    for key, value in data.items():
        if isinstance(value, dict):
            if key not in _SECTIONS or key is None:
                raise ConfigError(f"unknown section [{key}]" + _suggest(key, [k for k in _SECTIONS if k]),
                                  _section_line(text, key))
            for sub, v in value.items():
                if sub not in _SECTIONS[key]:
                    fail(f"unknown key {key}.{sub}" + _suggest(sub, _SECTIONS[key]), sub, key)
                if not _finite(v):
                    fail(f"{key}.{sub} must be finite", sub, key)
        else:
            if key not in _SECTIONS[None]:
                fail(f"unknown key {key!r}" + _suggest(key, _SECTIONS[None]), key)

    file_command = data.get("command")
    if command is None:
        command = file_command
    elif file_command is not None and file_command != command:
        fail(f"config is for command {file_command!r}, not {command!r}", "command")
    if command not in COMMANDS:
        fail(f"unknown command {command!r}" + _suggest(str(command), COMMANDS), "command")

    kw: dict = {"command": command}

    seed = data.get("seed", DEFAULT_SEED)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        fail("seed must be a nonnegative integer", "seed")
    kw["seed"] = seed

    lat = data.get("lattice", {})
    if lat:
        dim = lat.get("dim")
        sizes = lat.get("sizes")
        spacing = lat.get("spacing")
        if not isinstance(dim, int) or isinstance(dim, bool) or not 1 <= dim <= 4:
            fail("lattice.dim must be an integer in 1..4", "dim", "lattice")
        if not isinstance(sizes, list) or len(sizes) != dim:
            fail(f"lattice.sizes needs {dim} entries", "sizes", "lattice")
        if any(not isinstance(n, int) or isinstance(n, bool) or n < 4 for n in sizes):
            fail("lattice.sizes entries must be integers >= 4", "sizes", "lattice")
        if spacing is None:
            spacing = [0.1] * dim
        if not isinstance(spacing, list) or len(spacing) != dim:
            fail(f"lattice.spacing needs {dim} entries", "spacing", "lattice")
        if any(isinstance(h, bool) or not isinstance(h, (int, float)) or h <= 0 for h in spacing):
            fail("lattice.spacing entries must be positive", "spacing", "lattice")
        kw.update(lattice_dim=dim, lattice_sizes=tuple(sizes), lattice_spacing=tuple(float(h) for h in spacing))

    for key, value in data.get("levels", {}).items():
        try:
            z = parse_complex(value)
        except ValueError as exc:
            fail(f"levels.{key}: {exc}", key, "levels")
        if key in ("s", "t") and z == 0:
            fail(f"levels.{key} = 0 is the empty structure", key, "levels")
        kw[key] = z

    couplings = data.get("couplings", {})
    for key, value in couplings.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
            fail(f"couplings.{key} must be a positive number", key, "couplings")
    kw["couplings"] = tuple(sorted((k, float(v)) for k, v in couplings.items()))

    for role in ("gamma", "phi"):
        raw = data.get("fields", {}).get(role)
        if raw is None:
            continue
        if isinstance(raw, (str, dict)):
            raw = [raw]
        sels = []
        for item in raw:
            if isinstance(item, str):
                name, params = item, {}
            elif isinstance(item, dict) and "name" in item:
                params = dict(item)
                name = params.pop("name")
            else:
                fail(f"fields.{role} entries must be names or tables with a name", role, "fields")
            if name not in FIELD_CATALOG:
                fail(f"unknown field {name!r}" + _suggest(name, FIELD_CATALOG), role, "fields")
            sels.append(FieldSelection(name, tuple(sorted((k, _freeze(v)) for k, v in params.items()))))
        kw[role] = tuple(sels)

    conv = data.get("convergence", {})
    if "configs" in conv:
        names = conv["configs"]
        if not isinstance(names, list):
            fail("convergence.configs must be a list", "configs", "convergence")
        for name in names:
            if name not in CONVERGENCE_CASES:
                fail(f"unknown convergence config {name!r}" + _suggest(name, CONVERGENCE_CASES), "configs", "convergence")
        kw["configs"] = tuple(names)
    if "steps" in conv:
        steps = conv["steps"]
        if not isinstance(steps, list) or len(steps) < 2 or any(
            isinstance(h, bool) or not isinstance(h, (int, float)) or h <= 0 for h in steps
        ):
            fail("convergence.steps needs at least two positive steps", "steps", "convergence")
        kw["steps"] = tuple(float(h) for h in steps)

    gauge = data.get("gauge", {})
    if "maps" in gauge:
        for name in gauge["maps"]:
            if name not in GAUGE_MAP_NAMES:
                fail(f"unknown gauge map {name!r}" + _suggest(name, GAUGE_MAP_NAMES), "maps", "gauge")
        kw["gauge_maps"] = tuple(gauge["maps"])
    for key, target, lo in (("seeds", "gauge_seeds", 1), ("sites", "gauge_sites", 1), ("dim", "gauge_dim", 1)):
        if key in gauge:
            v = gauge[key]
            if isinstance(v, bool) or not isinstance(v, int) or v < lo or (key == "dim" and v > 4):
                fail(f"gauge.{key} must be a positive integer", key, "gauge")
            kw[target] = v
    if "use_E" in gauge:
        if not isinstance(gauge["use_E"], bool):
            fail("gauge.use_E must be true or false", "use_E", "gauge")
        kw["use_E"] = gauge["use_E"]

    for section, key, target in (("axioms", "pairs", "pairs"), ("axioms", "triples", "triples"), ("reduce", "cases", "reduce_cases")):
        if key in data.get(section, {}):
            v = data[section][key]
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                fail(f"{section}.{key} must be a positive integer", key, section)
            kw[target] = v

    tols = dict(DEFAULT_TOLERANCES)
    for key, value in data.get("tolerances", {}).items():
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
            fail(f"tolerances.{key} must be a nonnegative number", key, "tolerances")
        tols[key] = float(value)
    kw["tolerances"] = tols

    out = data.get("output", {})
    if "path" in out:
        if not isinstance(out["path"], str) or not out["path"]:
            fail("output.path must be a nonempty string", "path", "output")
        kw["out"] = out["path"]
    if "format" in out:
        if out["format"] not in FORMATS:
            fail(f"output.format must be one of {FORMATS}", "format", "output")
        kw["format"] = out["format"]

    return RunConfig(**kw)


def _freeze(v):
    return tuple(v) if isinstance(v, list) else v


def _section_line(text: str, section: str) -> int | None:
    pat = re.compile(rf"^\s*\[\s*{re.escape(section)}\s*\]")
    for i, line in enumerate(text.splitlines(), 1):
        if pat.match(line):
            return i
    return None


def default_config(command: str) -> RunConfig:
    return parse_config("", command)
