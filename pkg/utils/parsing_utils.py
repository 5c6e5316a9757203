"""Parsing utilities for the text forms used on the command line."""
import re
from typing import List

from core.errors import ParseError
from core.laurent import LaurentPoly
from core.permutation import Permutation
from core.tableau import Shape, StandardTableau, YamanouchiWord

_GENERATOR = re.compile(r"s_?(\d+)")


class ParsingUtils:
    """Utility class turning command-line text into combinatorial objects."""

    @staticmethod
    def parse_generator_word(text: str) -> List[int]:
        """Parse ``s2s1``, ``s_2 s_1``, ``2,1`` or ``21`` into [2, 1].

        The word is read left to right; the rightmost generator acts first.

        Raises:
            ParseError: On empty or malformed words.
        """
        compact = text.replace(" ", "")
        if not compact:
            raise ParseError("empty generator word")
        if compact.startswith("s"):
            indices = _GENERATOR.findall(compact)
            if "".join(f"s{i}" for i in indices) != compact.replace("_", ""):
                raise ParseError(f"malformed generator word {text!r}")
        elif "," in compact:
            indices = compact.split(",")
        else:
            indices = list(compact)
        try:
            word = [int(index) for index in indices]
        except ValueError as exception:
            raise ParseError(f"malformed generator word {text!r}") from exception
        if any(index < 1 for index in word):
            raise ParseError(f"generator indices start at 1: {text!r}")
        return word

    @staticmethod
    def parse_shape(text: str) -> Shape:
        """Parse ``3,3,3`` or ``[3,3,3]`` into a partition.

        Raises:
            ParseError: If the parts are not positive and weakly decreasing.
        """
        body = text.strip().strip("[]()")
        try:
            shape = tuple(int(part) for part in body.split(",") if part.strip())
        except ValueError as exception:
            raise ParseError(f"malformed shape {text!r}") from exception
        if not shape or any(part < 1 for part in shape) or list(shape) != sorted(shape, reverse=True):
            raise ParseError(f"not a partition: {text!r}")
        return shape

    @staticmethod
    def parse_permutation(text: str) -> Permutation:
        return Permutation.parse(text)

    @staticmethod
    def parse_tableau(text: str) -> StandardTableau:
        return StandardTableau.parse(text)

    @staticmethod
    def parse_yamanouchi(text: str) -> YamanouchiWord:
        """Parse a word over ``+``, ``0``, ``-``.

        Raises:
            ParseError: On foreign symbols or a prefix that is not Yamanouchi.
        """
        try:
            return YamanouchiWord(text.strip())
        except ValueError as exception:
            raise ParseError(str(exception)) from exception

    @staticmethod
    def parse_polynomial(text: str) -> LaurentPoly:
        return LaurentPoly.parse(text)
