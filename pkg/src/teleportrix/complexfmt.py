"""Text format for complex parameters, shared by the CLI and the library.

Accepted forms: "a", "bi", "a+bi", "a-bi" with decimal reals (an optional
exponent is tolerated), plus a bare "i" meaning "1i". This is the only
format the CLI emits, so reports round-trip through parse_complex.
"""

from __future__ import annotations

import cmath
import re

from .errors import NonFinite, ParseError

_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_RE_REAL = re.compile(rf"^({_REAL})$")
_RE_IMAG = re.compile(rf"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?)i$")
_RE_BOTH = re.compile(rf"^({_REAL})([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])i$")


def parse_complex(text: str) -> complex:
    """Parse "a", "bi", "a+bi" or "a-bi" into a complex number ("i" = "1i")."""
    token = text.strip()
    if not token:
        raise ParseError("empty complex literal")
    m = _RE_REAL.match(token)
    if m:
        return complex(float(m.group(1)), 0.0)
    m = _RE_IMAG.match(token)
    if m:
        return complex(0.0, _imag_part(m.group(1)))
    m = _RE_BOTH.match(token)
    if m:
        return complex(float(m.group(1)), _imag_part(m.group(2)))
    raise ParseError(f"cannot parse complex number from {token!r}")


def _imag_part(digits: str) -> float:
    if digits in ("", "+"):
        return 1.0
    if digits == "-":
        return -1.0
    return float(digits)


def format_complex(z: complex, digits: int = 12) -> str:
    """Render a complex number in the format parse_complex accepts."""
    re_s = f"{z.real:.{digits}g}"
    im_s = f"{abs(z.imag):.{digits}g}"
    if z.imag == 0.0:
        return re_s
    sign = "+" if z.imag > 0 else "-"
    if z.real == 0.0:
        return f"{sign if sign == '-' else ''}{im_s}i"
    return f"{re_s}{sign}{im_s}i"


def as_complex(value) -> complex:
    """Coerce a number or complex literal string into a complex value."""
    if isinstance(value, str):
        return parse_complex(value)
    return complex(value)


def finite_complex(value, name: str = "parameter") -> complex:
    """as_complex plus a finiteness check; raises NonFinite otherwise."""
    z = as_complex(value)
    if not cmath.isfinite(z):
        raise NonFinite(f"{name} must be finite, got {z!r}")
    return z
