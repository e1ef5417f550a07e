"""
Matrix Market reader and writer

The grammar only tokenizes: a banner line, then whitespace separated numbers
with ``%`` comments ignored. The size line and entries are checked against
the banner afterwards, with errors located at the offending number.
"""
import os
import re
from typing import IO, List, NamedTuple, Union

import numpy as np
import pyparsing as pp
import scipy.io

from ._errors import ParseError
from ._matrix import ComplexMatrix, as_matrix

pp.ParserElement.enablePackrat()


class Located(NamedTuple):
    text: str
    line: int
    column: int


banner = pp.CaselessLiteral("%%MatrixMarket").setName("banner")
object_keyword = pp.CaselessKeyword("matrix").setName("object")
layout = pp.oneOf("coordinate array", caseless=True, asKeyword=True)(
    "layout"
).setName("layout")
field = pp.oneOf("real complex integer", caseless=True, asKeyword=True)(
    "field"
).setName("field")
symmetry = pp.oneOf(
    "general symmetric hermitian skew-symmetric", caseless=True, asKeyword=True
)("symmetry").setName("symmetry")
header = banner + object_keyword + layout + field + symmetry

comment = pp.Regex(r"%(?!%matrixmarket)[^\n]*", flags=re.IGNORECASE)
number = (
    pp.Regex(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
    .setParseAction(lambda s, l, t: Located(t[0], pp.lineno(l, s), pp.col(l, s)))
    .setName("number")
)
document = (
    header + pp.Group(pp.OneOrMore(number))("numbers") + pp.StringEnd()
).ignore(comment)

_INTEGER = re.compile(r"[+-]?\d+$")

MatrixSource = Union[str, os.PathLike]


def _fail(message: str, token: Located):
    raise ParseError(message, token.line, token.column)


def _integer(token: Located, what: str) -> int:
    if not _INTEGER.match(token.text):
        _fail(f"{what} must be an integer, got {token.text!r}", token)
    return int(token.text)


def _values(tokens: List[Located], field: str) -> List[complex]:
    if field == "complex":
        return [
            complex(float(re_.text), float(im.text))
            for re_, im in zip(tokens[::2], tokens[1::2])
        ]
    if field == "integer":
        return [complex(_integer(token, "integer entry")) for token in tokens]
    return [complex(float(token.text)) for token in tokens]


def _mirror(a: np.ndarray, i: int, j: int, value: complex, symmetry: str):
    a[i, j] = value
    if i == j:
        return
    if symmetry == "symmetric":
        a[j, i] = value
    elif symmetry == "hermitian":
        a[j, i] = np.conj(value)
    elif symmetry == "skew-symmetric":
        a[j, i] = -value


def _coordinate(numbers, rows, cols, field, symmetry) -> np.ndarray:
    nnz = _integer(numbers[2], "entry count")
    width = 4 if field == "complex" else 3
    entries = numbers[3:]
    if len(entries) != nnz * width:
        where = entries[nnz * width] if len(entries) > nnz * width else numbers[-1]
        _fail(
            f"expected {nnz} entries of {width} numbers, got {len(entries)} numbers",
            where,
        )
    a = np.zeros((rows, cols), dtype=np.complex128)
    seen = set()
    for start in range(0, len(entries), width):
        tokens = entries[start : start + width]
        if tokens[-1].line != tokens[0].line:
            _fail("coordinate entry spans several lines", tokens[0])
        i = _integer(tokens[0], "row index") - 1
        j = _integer(tokens[1], "column index") - 1
        if not (0 <= i < rows and 0 <= j < cols):
            _fail(f"index ({i + 1}, {j + 1}) out of range", tokens[0])
        if symmetry != "general" and i < j:
            _fail(f"{symmetry} storage holds the lower triangle only", tokens[0])
        if symmetry == "skew-symmetric" and i == j:
            _fail("skew-symmetric storage has no diagonal", tokens[0])
        if (i, j) in seen:
            _fail(f"duplicate entry ({i + 1}, {j + 1})", tokens[0])
        seen.add((i, j))
        (value,) = _values(tokens[2:], field)
        _mirror(a, i, j, value, symmetry)
    return a


def _array(numbers, rows, cols, field, symmetry) -> np.ndarray:
    if symmetry == "general":
        positions = [(i, j) for j in range(cols) for i in range(rows)]
    else:
        first = 1 if symmetry == "skew-symmetric" else 0
        positions = [(i, j) for j in range(cols) for i in range(j + first, rows)]
    width = 2 if field == "complex" else 1
    entries = numbers[2:]
    if len(entries) != len(positions) * width:
        where = (
            entries[len(positions) * width]
            if len(entries) > len(positions) * width
            else numbers[-1]
        )
        _fail(
            f"expected {len(positions)} values of {width} numbers, got"
            f" {len(entries)} numbers",
            where,
        )
    a = np.zeros((rows, cols), dtype=np.complex128)
    for (i, j), value in zip(positions, _values(entries, field)):
        _mirror(a, i, j, value, symmetry)
    return a


def parse(content: str) -> np.ndarray:
    """
    Dense complex array of a Matrix Market document

    :raises ParseError: with the line and column of the first problem
    """
    try:
        result = document.parseString(content, parseAll=True)
    except pp.ParseException as err:
        raise ParseError(err.msg, err.lineno, err.col) from None
    layout_, field_, symmetry_ = (
        result["layout"].lower(),
        result["field"].lower(),
        result["symmetry"].lower(),
    )
    numbers = list(result["numbers"])
    size = 3 if layout_ == "coordinate" else 2
    if len(numbers) < size:
        _fail(f"{layout_} size line needs {size} integers", numbers[-1])
    rows = _integer(numbers[0], "row count")
    cols = _integer(numbers[1], "column count")
    if rows < 1 or cols < 1:
        _fail(f"empty {rows} x {cols} matrix", numbers[0])
    if symmetry_ != "general" and rows != cols:
        _fail(f"{symmetry_} matrices must be square", numbers[0])
    build = _coordinate if layout_ == "coordinate" else _array
    return build(numbers, rows, cols, field_, symmetry_)


def parse_matrix(content: str) -> ComplexMatrix:
    """Square :py:data:`~hgs._matrix.ComplexMatrix` of a Matrix Market document"""
    a = parse(content)
    if a.shape[0] != a.shape[1]:
        raise ParseError(f"expected a square matrix, got {a.shape[0]} x {a.shape[1]}", 1, 1)
    return as_matrix(a)


def parse_vector(content: str) -> np.ndarray:
    """Complex vector of a Matrix Market document holding an ``n x 1`` matrix"""
    a = parse(content)
    if a.shape[1] != 1:
        raise ParseError(f"expected an n x 1 vector, got {a.shape[0]} x {a.shape[1]}", 1, 1)
    return a[:, 0]


def _read(path: MatrixSource) -> str:
    with open(path) as stream:
        return stream.read()


def read_matrix(path: MatrixSource) -> ComplexMatrix:
    return parse_matrix(_read(path))


def read_vector(path: MatrixSource) -> np.ndarray:
    return parse_vector(_read(path))


def _real_if_possible(a: np.ndarray) -> np.ndarray:
    return a.real if not np.any(a.imag) else a


def write_matrix(target: Union[MatrixSource, IO], a, comment: str = ""):
    """
    Write ``a`` as a dense ``array`` of the ``real`` or ``complex`` field

    Symmetry is always written as ``general`` so that reading back is
    bit exact.
    """
    a = as_matrix(a)
    scipy.io.mmwrite(target, _real_if_possible(a), comment=comment, symmetry="general")


def write_vector(target: Union[MatrixSource, IO], x, comment: str = ""):
    x = np.asarray(x, dtype=np.complex128).reshape(-1, 1)
    scipy.io.mmwrite(target, _real_if_possible(x), comment=comment, symmetry="general")
