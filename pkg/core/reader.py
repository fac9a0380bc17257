"""
S-expression reader shared by every textual grammar (sets, submeasures, names,
formulas, manifests).

Functions:
    read(text): every top-level form of `text`.
    read_one(text): exactly one form.
    write(form): inverse of read for forms built from lists, Symbols, ints and Strings.

Forms are nested lists of:
    Symbol  - bare words such as `meet`, `v`, `even`
    int     - naturals (negative literals are rejected by the grammars, not here)
    String  - double-quoted text, used for bit strings

Every list, Symbol and String remembers the character offset it started at, so
grammar errors can point back into the source.
"""

from __future__ import annotations

import re

from core.errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<space>\s+|;[^\n]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<string>"[^"]*")
  | (?P<int>-?\d+(?=[\s()";]|$))
  | (?P<symbol>[^\s()";]+)
    """,
    re.VERBOSE,
)


class Symbol(str):
    position: int | None = None


class String(str):
    position: int | None = None


class Form(list):
    position: int | None = None


def _located(cls, value, position):
    out = cls(value)
    out.position = position
    return out


def _tokens(text):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "space":
            yield kind, m.group(), pos
        pos = m.end()


def read(text: str) -> list:
    stack = [Form()]
    for kind, value, pos in _tokens(text):
        if kind == "open":
            stack.append(_located(Form, (), pos))
        elif kind == "close":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", pos)
            done = stack.pop()
            stack[-1].append(done)
        elif kind == "string":
            stack[-1].append(_located(String, value[1:-1], pos))
        elif kind == "int":
            stack[-1].append(int(value))
        else:
            stack[-1].append(_located(Symbol, value, pos))
    if len(stack) > 1:
        raise ParseError("unclosed '('", stack[-1].position)
    return stack[0]


def read_one(text: str):
    forms = read(text)
    if len(forms) != 1:
        raise ParseError(f"expected exactly one form, found {len(forms)}", 0)
    return forms[0]


def write(form) -> str:
    if isinstance(form, list):
        return "(" + " ".join(write(f) for f in form) + ")"
    if isinstance(form, String):
        return f'"{form}"'
    return str(form)


def position_of(form) -> int | None:
    return getattr(form, "position", None)


def head(form) -> str | None:
    """The operator symbol of a list form, if any."""
    if isinstance(form, list) and form and isinstance(form[0], Symbol):
        return str(form[0])
    return None


def expect_int(form, what="natural") -> int:
    if isinstance(form, bool) or not isinstance(form, int) or form < 0:
        raise ParseError(f"expected a {what}, got {write(form)}", position_of(form))
    return form


def expect_string(form, what="quoted bit string") -> str:
    if not isinstance(form, String):
        raise ParseError(f"expected a {what}, got {write(form)}", position_of(form))
    return str(form)


def expect_list(form, what="list") -> list:
    if not isinstance(form, list):
        raise ParseError(f"expected a {what}, got {write(form)}", position_of(form))
    return form


def arity_error(form, expected) -> ParseError:
    return ParseError(f"'{head(form)}' expects {expected}, got {len(form) - 1}", position_of(form))
