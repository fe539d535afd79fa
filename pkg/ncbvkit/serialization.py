"""
Input files, the text grammar and JSON reports

Input files are JSON objects tagged with a schema name and version::

    {
        "schema": "ncbvkit/input",
        "version": 1,
        "space": [["e", 0]],
        "pairing": {"parity": 0, "matrix": [["1"]]},
        "products": [{"left": "e", "right": "e", "value": {"e": "1"}}],
        "solution": [{"coefficient": "1/6", "genus": 0, "words": [["e", "e", "e"]]}],
        "matrix": {"algebra": "q", "N": 2, "xi": null}
    }

Only "space" and "pairing" are required. A pairing of parity 1 selects the
odd-pairing flavor, parity 0 the even-pairing flavor. When "products" is
given without "solution" the cubic action of the algebra is used.

Elements of F are written as signed sums of products of parenthesised
words, "2/3 (a b)(c) - (b)"; polynomials as signed sums of "*"-joined
factors, "2/3*A[a,0,0]*A[b,1,1] - A[a,1,1]^2".
"""
from collections import namedtuple
from fractions import Fraction
from logging import getLogger
import json
import re

from .bvcalculus import HSeries, cubic_action_from_algebra, solution_from_terms
from .cyclicspace import EVEN_PAIRING, ODD_PAIRING, FElement, FSpace
from .gradedcore import GradedSpace, PairingForm, format_scalar, to_scalar
from .ncbverrors import NcbvError, InputError, ParseError
from .spoly import SPoly
from .tracealgebra import TraceAlgebra

INPUT_SCHEMA = "ncbvkit/input"
REPORT_SCHEMA = "ncbvkit/report"
SCHEMA_VERSION = 1

InputSpec = namedtuple("InputSpec", "space pairing fspace products solution matrix")
MatrixParameters = namedtuple("MatrixParameters", "algebra xi")

_NUMBER = re.compile(r"\d+(?:/\d+)?")
_LABEL = re.compile(r"[^\s()]+")
_FACTOR = re.compile(r"([A-Za-z_][A-Za-z0-9_]*(?:\[[^\]]*\])?)(?:\^(\d+))?")

logger = getLogger(__name__)


class _Scanner:
    """
    Position tracking over an expression string
    """
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def match(self, pattern):
        self.skip()
        found = pattern.match(self.text, self.pos)
        if found:
            self.pos = found.end()
        return found

    def sign(self, required):
        char = self.peek()
        if char in ("+", "-"):
            self.pos += 1
            return -1 if char == "-" else 1
        if required:
            raise ParseError(self.pos, "expected '+' or '-'")
        return 1

    def number(self):
        start = self.pos
        found = self.match(_NUMBER)
        if not found:
            return None
        try:
            return Fraction(found.group(0))
        except ZeroDivisionError:
            raise ParseError(start, "zero denominator") from None


def _signed_terms(text, body):
    """
    Split "c1 body1 + c2 body2 ..." calling body(scanner) for each term
    """
    if not text.strip():
        raise ParseError(0, "empty expression")
    scanner = _Scanner(text)
    terms = []
    first = True
    while True:
        sign = scanner.sign(required=not first)
        first = False
        start = scanner.pos
        coefficient = scanner.number()
        if coefficient is not None and scanner.peek() == "*":
            scanner.pos += 1
        content = body(scanner)
        if coefficient is None and content is None:
            scanner.skip()
            raise ParseError(max(start, scanner.pos), "expected a coefficient or a factor")
        terms.append((sign * (Fraction(1) if coefficient is None else coefficient), content))
        if not scanner.peek():
            return terms


def parse_element(fspace, text):
    """
    Parse the text form of an element of F

    :param fspace: Space the labels belong to
    :type fspace: FSpace
    :raises ParseError: with the offset of the first offending character
    :rtype: FElement
    """
    labels = set(fspace.space.labels)

    def words(scanner):
        found = []
        while scanner.peek() == "(":
            scanner.pos += 1
            word = []
            while True:
                char = scanner.peek()
                if not char:
                    raise ParseError(scanner.pos, "unclosed parenthesis")
                if char == ")":
                    scanner.pos += 1
                    break
                start = scanner.pos
                found_label = scanner.match(_LABEL)
                if found_label is None:
                    raise ParseError(scanner.pos, "unexpected '(' inside a word")
                label = found_label.group(0)
                if label not in labels:
                    raise ParseError(start, "unknown label {!r}".format(label))
                word.append(label)
            if not word:
                raise ParseError(scanner.pos - 1, "empty word")
            found.append(word)
        return found or None

    return FElement.from_terms(fspace, [(value, content or []) for value, content in _signed_terms(text, words)])


def parse_polynomial(text, variables):
    """
    Parse the text form of a polynomial

    :param variables: The variables that may appear, matched by their text form
    :raises ParseError: with the offset of the first offending character
    :rtype: SPoly
    """
    table = {str(var): var for var in variables}

    def factors(scanner):
        found = []
        while True:
            match = scanner.match(_FACTOR)
            if not match:
                if found:
                    raise ParseError(scanner.pos, "expected a factor after '*'")
                return None
            var = table.get(match.group(1))
            if var is None:
                raise ParseError(match.start(), "unknown variable {!r}".format(match.group(1)))
            found.extend([var] * int(match.group(2) or 1))
            if scanner.peek() != "*":
                return found
            scanner.pos += 1

    result = SPoly()
    for value, content in _signed_terms(text, factors):
        result = result + SPoly.from_factors(content or (), value)
    return result


def _require(data, key, kind):
    if key not in data:
        raise InputError("input is missing {!r}".format(key))
    if not isinstance(data[key], kind):
        raise InputError("{!r} has the wrong type".format(key))
    return data[key]


def _space(data):
    basis = []
    for entry in _require(data, "space", list):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2 or entry[1] not in (0, 1):
            raise InputError("space entries are [label, parity] with parity 0 or 1, got {!r}".format(entry))
        basis.append((str(entry[0]), entry[1]))
    return GradedSpace(basis)


def _pairing(data, space):
    pairing = _require(data, "pairing", dict)
    parity = pairing.get("parity")
    if parity not in (0, 1):
        raise InputError("pairing parity must be 0 or 1")
    rows = pairing.get("matrix")
    if not isinstance(rows, list):
        raise InputError("pairing needs a matrix")
    form = PairingForm.from_rows(space, parity, [[to_scalar(value) for value in row] for row in rows])
    form.check()
    return form


def _products(data):
    products = {}
    for entry in data.get("products") or []:
        try:
            key = (entry["left"], entry["right"])
            products[key] = {label: to_scalar(value) for label, value in entry["value"].items()}
        except (KeyError, TypeError, AttributeError):
            raise InputError("products entries need left, right and value, got {!r}".format(entry)) from None
    return products


def _solution(data, fspace, pairing, products):
    entries = data.get("solution")
    if entries is None:
        if not products:
            return None
        return HSeries({0: cubic_action_from_algebra(products, pairing, fspace.flavor)})
    terms = []
    for entry in entries:
        try:
            words = [[str(label) for label in word] for word in entry["words"]]
            genus = int(entry.get("genus", 0))
            terms.append((to_scalar(entry.get("coefficient", 1)), genus, words))
        except (KeyError, TypeError, ValueError):
            raise InputError("solution entries need coefficient, genus and words, got {!r}".format(entry)) from None
        if genus < 0 or not words:
            raise InputError("solution term needs genus >= 0 and at least one word")
    return solution_from_terms(fspace, terms)


def _matrix(data, fspace):
    entry = data.get("matrix")
    if entry is None:
        return None
    if not isinstance(entry, dict):
        raise InputError("'matrix' must be an object")
    name = str(entry.get("algebra", "gl"))
    if ":" not in name and name != "q1":
        size = entry.get("N")
        if not isinstance(size, int) or size < 1:
            raise InputError("matrix parameters need a positive N")
        name = "{}:{}".format(name, size)
    algebra = TraceAlgebra.from_name(name)
    xi = entry.get("xi")
    if xi is not None:
        xi = [[None if value in (None, 0, "0") else to_scalar(value) for value in row] for row in xi]
    if algebra.trace_parity != fspace.shift:
        logger.warning("%s does not realize the %s flavor of the input", algebra.name, fspace.flavor)
    return MatrixParameters(algebra, xi)


def load_input(source):
    """
    Load and validate an input document

    :param source: Path of a JSON file, or the decoded document
    :raises InputError: on schema violations
    :raises NcbvError: if the space or pairing violates its invariants
    :rtype: InputSpec
    """
    if isinstance(source, dict):
        data = source
    else:
        try:
            with open(source) as input_file:
                data = json.load(input_file)
        except (OSError, ValueError) as error:
            raise InputError("cannot read {}: {}".format(source, error)) from error
    if not isinstance(data, dict) or data.get("schema") != INPUT_SCHEMA:
        raise InputError("input is not an {} document".format(INPUT_SCHEMA))
    if data.get("version") != SCHEMA_VERSION:
        raise InputError("unsupported input version {!r}".format(data.get("version")))
    space = _space(data)
    pairing = _pairing(data, space)
    fspace = FSpace(space, ODD_PAIRING if pairing.parity else EVEN_PAIRING)
    products = _products(data)
    solution = _solution(data, fspace, pairing, products)
    matrix = _matrix(data, fspace)
    logger.debug("Loaded %d letters, %s flavor", len(space), fspace.flavor)
    return InputSpec(space, pairing, fspace, products, solution, matrix)


def series_to_json(series):
    """
    HSeries as a map "h^k" to the text of its coefficient
    """
    if series is None:
        return None
    return {"h^{}".format(exponent): str(value) for exponent, value in series.items()}


def to_json(value):
    """
    JSON-compatible form of report payloads
    """
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, (FElement, SPoly)):
        return str(value)
    if isinstance(value, HSeries):
        return series_to_json(value)
    if isinstance(value, dict):
        return {str(key): to_json(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(item) for item in value]
    return value


def dump_report(report, path=None):
    """
    Serialize a report as JSON; written to path when given

    :return: The JSON text
    """
    document = {"schema": REPORT_SCHEMA, "version": SCHEMA_VERSION}
    document.update(to_json(report.as_dict()))
    text = json.dumps(document, indent=2, sort_keys=True)
    if path:
        try:
            with open(path, "w") as report_file:
                report_file.write(text + "\n")
        except OSError as error:
            raise NcbvError("cannot write report {}: {}".format(path, error)) from error
        logger.info("Report written to %s", path)
    return text
