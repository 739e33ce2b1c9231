#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/parser.py

"""
Monomial Parser Module

Reads monomial sets written as text, e.g. "x1*x2, x1x3, x_2^2 x_3".

Grammar:
    set      := monomial (',' monomial)*
    monomial := factor (['*'] factor)*        (blanks are ignored)
    factor   := 'x' ['_'] integer ['^' integer]

Errors carry the 0-based character position of the offending token.
"""

# Standard library imports
import re
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Tuple

# Local imports
from src.config.logging_config import get_logger
from src.core import MonomialSet, new_monomial_set
from src.exceptions import IndexOutOfRange, ParseError

# Initialize logger
logger = get_logger(__name__)

TOKENS = {
    "var": r"x_?[0-9]+",
    "caret": r"\^",
    "int": r"[0-9]+",
    "star": r"\*",
    "comma": r",",
    "skip": r"[ \t]+",
    "error": r".",
}
TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in TOKENS.items()))


class Token(NamedTuple):
    type: str
    value: str
    where: Tuple[int, int]


@dataclass(frozen=True)
class ParsedInput:
    """
    A parsed monomial set before validation.

    Attributes:
        n: Number of variables (explicit, or the largest index used)
        monomial_texts: Source text of each monomial
        vectors: Exponent vectors of the monomials
        origin: "inline" or "file"
    """

    n: int
    monomial_texts: Tuple[str, ...]
    vectors: Tuple[Tuple[int, ...], ...]
    origin: str = "inline"


def _syntax_error(message: str, position: int) -> ParseError:
    error_msg = f"{message} at position {position}"
    logger.error(error_msg)
    return ParseError(error_msg, position=position)


def tokenize(text: str) -> Iterator[Token]:
    """
    Split text into tokens, skipping blanks.

    Raises:
        ParseError: On any character outside the grammar
    """
    for mo in TOKEN_REGEX.finditer(text):
        kind = str(mo.lastgroup)
        value = mo.group()
        if kind == "skip":
            continue
        if kind == "error":
            raise _syntax_error(f"Unexpected character {value!r}", mo.start())
        yield Token(kind, value, (mo.start(), mo.end()))


def split_monomials(
    text: str, n: Optional[int] = None, origin: str = "inline"
) -> ParsedInput:
    """
    Parse text into exponent vectors.

    Args:
        text: Monomials separated by commas
        n: Number of variables; inferred as the largest index when None
        origin: Where the text came from ("inline" or "file")

    Returns:
        ParsedInput

    Raises:
        ParseError: If the text does not follow the grammar
        IndexOutOfRange: If a variable index exceeds an explicit n
    """
    tokens = list(tokenize(text))
    monomials: List[List[Tuple[int, int]]] = [[]]
    spans: List[List[int]] = [[]]
    highest = 0
    position = 0

    while position < len(tokens):
        token = tokens[position]
        if token.type == "comma":
            if not monomials[-1]:
                raise _syntax_error("Empty monomial", token.where[0])
            monomials.append([])
            spans.append([])
            position += 1
            continue

        if token.type == "star":
            if not monomials[-1]:
                raise _syntax_error("'*' must follow a factor", token.where[0])
            position += 1
            if position == len(tokens) or tokens[position].type != "var":
                where = tokens[position].where[0] if position < len(tokens) else len(text)
                raise _syntax_error("Expected a variable after '*'", where)
            token = tokens[position]

        if token.type != "var":
            raise _syntax_error(f"Expected a variable, found {token.value!r}", token.where[0])

        index = int(token.value.lstrip("x_"))
        if index < 1:
            raise _syntax_error("Variable numbers start at 1", token.where[0])
        if n is not None and index > n:
            error_msg = f"x{index} exceeds n={n} at position {token.where[0]}"
            logger.error(error_msg)
            raise IndexOutOfRange(error_msg, position=token.where[0])

        exponent = 1
        end = token.where[1]
        position += 1
        if position < len(tokens) and tokens[position].type == "caret":
            caret = tokens[position]
            position += 1
            if position == len(tokens) or tokens[position].type != "int":
                raise _syntax_error("Expected an exponent after '^'", caret.where[1])
            exponent = int(tokens[position].value)
            end = tokens[position].where[1]
            position += 1

        if not spans[-1]:
            spans[-1].append(token.where[0])
        spans[-1][1:] = [end]
        monomials[-1].append((index, exponent))
        highest = max(highest, index)

    if not monomials[-1]:
        raise _syntax_error("Empty monomial", len(text))

    n = highest if n is None else n
    vectors = []
    for factors in monomials:
        vector = [0] * n
        for index, exponent in factors:
            vector[index - 1] += exponent
        vectors.append(tuple(vector))

    texts = tuple(text[span[0]:span[-1]] for span in spans)
    return ParsedInput(n=n, monomial_texts=texts, vectors=tuple(vectors), origin=origin)


def parse_monomials(
    text: str, n: Optional[int] = None, origin: str = "inline"
) -> MonomialSet:
    """
    Parse and validate a monomial set.

    Args:
        text: Monomials separated by commas, e.g. "x1*x2, x1*x3, x2*x3"
        n: Number of variables; inferred as the largest index when None
        origin: Where the text came from ("inline" or "file")

    Returns:
        MonomialSet

    Raises:
        ParseError: If the text does not follow the grammar
        IndexOutOfRange: If a variable index exceeds an explicit n
        MonocremError: If the monomials do not form a valid set
    """
    parsed = split_monomials(text, n, origin=origin)
    logger.debug(
        f"Parsed {len(parsed.vectors)} monomial(s) in {parsed.n} variable(s) from {parsed.origin} input"
    )
    return new_monomial_set(parsed.n, list(parsed.vectors))
