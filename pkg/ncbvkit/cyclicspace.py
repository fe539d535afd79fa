"""
The space F of products of cyclic words

Odd-pairing flavor: symmetric algebra on cyclic words in the letters of V.
Even-pairing flavor: letters of the parity-shifted space, and every word
carries one extra parity flip; sorting word lists with these effective
parities realizes the cycle orientation sign.

Words are stored as tuples of basis positions in their lexicographically
least rotation. Terms are tuples of words sorted lexicographically, with
every reordering sign absorbed into the coefficient.
"""
from fractions import Fraction
from itertools import product
from logging import getLogger

from .gradedcore import ZERO, format_scalar, reorder_sign, swap_sign, to_scalar
from .ncbverrors import FlavorMismatchError, InputError

logger = getLogger(__name__)

ODD_PAIRING = "odd"
EVEN_PAIRING = "even"
FLAVORS = (ODD_PAIRING, EVEN_PAIRING)


class FSpace:
    """
    Words over a graded space in one flavor

    :param space: The graded space V
    :type space: GradedSpace
    :param flavor: ODD_PAIRING or EVEN_PAIRING
    """
    def __init__(self, space, flavor):
        if flavor not in FLAVORS:
            raise InputError("unknown flavor {!r}".format(flavor))
        self.space = space
        self.flavor = flavor
        self.shift = 1 if flavor == EVEN_PAIRING else 0
        self.letter_parities = tuple((parity + self.shift) % 2 for parity in space.parities)
        self._canonical = {}

    def __eq__(self, other):
        return isinstance(other, FSpace) and self.space == other.space and self.flavor == other.flavor

    def __hash__(self):
        return hash((self.space, self.flavor))

    def __repr__(self):
        return "FSpace({!r}, {!r})".format(self.space, self.flavor)

    def letter_parity(self, letter):
        return self.letter_parities[letter]

    def word_parity(self, word):
        """
        Sum of the letter parities of a word or word piece
        """
        return sum(self.letter_parities[letter] for letter in word) % 2

    def effective_parity(self, word):
        """
        Parity of a word as a factor of a term
        """
        return (self.word_parity(word) + self.shift) % 2

    def rotation_sign(self, word, offset):
        """
        Koszul sign of rotating word[offset:] to the front
        """
        return swap_sign(self.word_parity(word[:offset]), self.word_parity(word[offset:]))

    def canonical(self, word):
        """
        Least rotation of a word of positions, with the sign of getting there

        :return: (word, sign) or None when a self-rotation has sign -1
        """
        cached = self._canonical.get(word)
        if cached is not None or word in self._canonical:
            return cached
        best, offset = word, 0
        result = None
        for k in range(1, len(word)):
            rotated = word[k:] + word[:k]
            if rotated == word:
                if self.rotation_sign(word, k) < 0:
                    break
                continue
            if rotated < best:
                best, offset = rotated, k
        else:
            result = (best, self.rotation_sign(word, offset))
        self._canonical[word] = result
        return result

    def sort_words(self, words):
        """
        Sort canonical words into term order

        :return: (sign, term) or None when an odd word repeats
        """
        order = sorted(range(len(words)), key=words.__getitem__)
        term = tuple(words[k] for k in order)
        for first, second in zip(term, term[1:]):
            if first == second and self.effective_parity(first):
                return None
        return reorder_sign([self.effective_parity(word) for word in words], order), term

    def normalize(self, words):
        """
        Canonical term of a list of raw words of positions

        :return: (sign, term) or None if the product vanishes
        """
        sign = 1
        canonical_words = []
        for word in words:
            if not word:
                raise InputError("empty cyclic word")
            found = self.canonical(tuple(word))
            if found is None:
                return None
            canonical_words.append(found[0])
            sign *= found[1]
        result = self.sort_words(canonical_words)
        if result is None:
            return None
        return sign * result[0], result[1]

    def term_parity(self, term):
        return sum(self.effective_parity(word) for word in term) % 2

    def positions(self, letters):
        return tuple(self.space.index(label) for label in letters)

    def labels(self, word):
        return tuple(self.space.label(letter) for letter in word)


def canonicalize_word(fspace, letters):
    """
    Canonical rotation of a word given by labels

    :return: (labels of the canonical rotation, sign) or None if the word is zero
    :raises UnknownLabelError: if a label is not in the space
    """
    if not letters:
        raise InputError("empty cyclic word")
    found = fspace.canonical(fspace.positions(letters))
    if found is None:
        return None
    word, sign = found
    return fspace.labels(word), sign


class FElement:
    """
    Finite linear combination of canonical terms

    :param fspace: Space of words
    :param terms: Map canonical term to coefficient
    """
    __slots__ = ("fspace", "terms")

    def __init__(self, fspace, terms=None):
        self.fspace = fspace
        self.terms = {term: Fraction(value) for term, value in (terms or {}).items() if value}

    @classmethod
    def zero(cls, fspace):
        return cls(fspace)

    @classmethod
    def unit(cls, fspace):
        return cls(fspace, {(): 1})

    @classmethod
    def from_words(cls, fspace, words, coefficient=1):
        """
        One product of cyclic words given as label sequences
        """
        return cls.from_terms(fspace, [(coefficient, words)])

    @classmethod
    def from_terms(cls, fspace, terms):
        """
        Sum of (coefficient, list of label sequences) pairs
        """
        result = {}
        for coefficient, words in terms:
            found = fspace.normalize([fspace.positions(word) for word in words])
            if found is None:
                continue
            sign, term = found
            result[term] = result.get(term, ZERO) + sign * to_scalar(coefficient)
        return cls(fspace, result)

    @classmethod
    def from_positions(cls, fspace, raw_terms):
        """
        Sum of (coefficient, list of raw position words) pairs
        """
        result = {}
        for coefficient, words in raw_terms:
            if not coefficient:
                continue
            found = fspace.normalize(words)
            if found is None:
                continue
            sign, term = found
            result[term] = result.get(term, ZERO) + sign * coefficient
        return cls(fspace, result)

    def _check(self, other):
        if self.fspace != other.fspace:
            raise FlavorMismatchError("cannot combine elements of {!r} and {!r}".format(
                self.fspace, other.fspace))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FElement):
            return not self.terms if other == 0 else NotImplemented
        return self.fspace == other.fspace and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        result = dict(self.terms)
        for term, value in other.terms.items():
            result[term] = result.get(term, ZERO) + value
        return FElement(self.fspace, result)

    def __neg__(self):
        return FElement(self.fspace, {term: -value for term, value in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = to_scalar(factor)
        return FElement(self.fspace, {term: factor * value for term, value in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def parts(self):
        """
        Split into (even part, odd part)
        """
        even, odd = {}, {}
        for term, value in self.terms.items():
            (odd if self.fspace.term_parity(term) else even)[term] = value
        return FElement(self.fspace, even), FElement(self.fspace, odd)

    def parity(self):
        """
        Parity of a nonzero homogeneous element

        :raises ValueError: for zero or inhomogeneous elements
        """
        parities = {self.fspace.term_parity(term) for term in self.terms}
        if len(parities) != 1:
            raise ValueError("element is not homogeneous")
        return parities.pop()

    def __repr__(self):
        return "FElement({!r})".format(str(self))

    def __str__(self):
        return format_element(self)


def letter_count(term):
    return sum(len(word) for word in term)


def multiply(x, y):
    """
    Graded-commutative product of two elements

    :raises FlavorMismatchError: if the elements live in different spaces
    """
    x._check(y)
    fspace = x.fspace
    result = {}
    for left, first in x.terms.items():
        for right, second in y.terms.items():
            found = fspace.sort_words(left + right)
            if found is None:
                continue
            sign, term = found
            result[term] = result.get(term, ZERO) + sign * first * second
    return FElement(fspace, result)


def grade(x):
    """
    Split an element by total letter count

    :return: Map letter count to the nonzero homogeneous part
    """
    parts = {}
    for term, value in x.terms.items():
        parts.setdefault(letter_count(term), {})[term] = value
    return {count: FElement(x.fspace, terms) for count, terms in sorted(parts.items())}


def word_basis(fspace, length):
    """
    All canonical nonzero cyclic words with the given number of letters
    """
    words = []
    for word in product(range(len(fspace.space)), repeat=length):
        found = fspace.canonical(word)
        if found is not None and found[0] == word:
            words.append(word)
    return words


def monomial_basis(fspace, count):
    """
    All canonical nonzero terms with the given total letter count

    :return: Sorted list of terms
    """
    words = sorted(word for length in range(1, count + 1) for word in word_basis(fspace, length))
    terms = []

    def extend(start, remaining, prefix):
        if not remaining:
            terms.append(tuple(prefix))
            return
        for k in range(start, len(words)):
            word = words[k]
            if len(word) > remaining:
                continue
            repeat = k if not fspace.effective_parity(word) else k + 1
            prefix.append(word)
            extend(repeat, remaining - len(word), prefix)
            prefix.pop()

    if count == 0:
        return [()]
    extend(0, count, [])
    return sorted(terms)


def random_element(fspace, count, rng, size=3, scale=5):
    """
    Seeded random combination of basis terms with count letters

    :param rng: A random.Random instance
    :param size: Number of terms drawn
    :param scale: Coefficients p/q with |p| and q at most this value
    """
    basis = monomial_basis(fspace, count)
    if not basis:
        return FElement(fspace)
    terms = {}
    for _ in range(size):
        term = rng.choice(basis)
        value = Fraction(rng.randint(-scale, scale), rng.randint(1, scale))
        terms[term] = terms.get(term, ZERO) + value
    return FElement(fspace, terms)


def substitute(x, images):
    """
    Replace every letter by a linear combination of letters

    :param images: Map label to a list of (coefficient, label) with the
        same letter parity; labels missing from the map are kept
    :raises FlavorMismatchError: if an image changes parity
    """
    fspace = x.fspace
    table = []
    for letter, label in enumerate(fspace.space.labels):
        combination = images.get(label, [(1, label)])
        row = []
        for coefficient, target in combination:
            position = fspace.space.index(target)
            if fspace.letter_parity(position) != fspace.letter_parity(letter):
                raise FlavorMismatchError("{!r} and {!r} have different parities".format(label, target))
            row.append((to_scalar(coefficient), position))
        table.append(row)
    raw = []
    for term, value in x.terms.items():
        letters = [letter for word in term for letter in word]
        for choice in product(*(table[letter] for letter in letters)):
            coefficient = value
            for factor, _ in choice:
                coefficient *= factor
            if not coefficient:
                continue
            targets = [position for _, position in choice]
            words, start = [], 0
            for word in term:
                words.append(tuple(targets[start:start + len(word)]))
                start += len(word)
            raw.append((coefficient, words))
    return FElement.from_positions(fspace, raw)


def format_term(fspace, term):
    return "".join("({})".format(" ".join(str(label) for label in fspace.labels(word))) for word in term)


def format_element(x):
    """
    Text form such as "2/3 (a b)(c) - (b)"; the empty product prints as 1
    """
    if not x.terms:
        return "0"
    pieces = []
    for term, value in sorted(x.terms.items(), key=lambda item: (letter_count(item[0]), item[0])):
        body = format_term(x.fspace, term)
        magnitude = abs(value)
        if not body:
            text = format_scalar(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = "{} {}".format(format_scalar(magnitude), body)
        if pieces:
            pieces.append(("+ " if value > 0 else "- ") + text)
        else:
            pieces.append(text if value > 0 else "-" + text)
    return " ".join(pieces)
