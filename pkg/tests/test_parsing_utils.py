import pytest

from core.errors import ParseError
from core.laurent import LaurentPoly
from core.tableau import StandardTableau, YamanouchiWord
from utils.file_utils import FileUtils
from utils.parsing_utils import ParsingUtils


@pytest.mark.parametrize("text", ["s2s1", "s_2 s_1", "2,1", "21", " s2 s1 "])
def test_generator_words(text):
    assert ParsingUtils.parse_generator_word(text) == [2, 1]


def test_multi_digit_generators():
    assert ParsingUtils.parse_generator_word("s11s2") == [11, 2]
    assert ParsingUtils.parse_generator_word("11,2") == [11, 2]


@pytest.mark.parametrize("text", ["", "sx", "s0", "2,a", "s2t1", "0"])
def test_bad_generator_words(text):
    with pytest.raises(ParseError):
        ParsingUtils.parse_generator_word(text)


def test_shapes():
    assert ParsingUtils.parse_shape("3,3,3") == (3, 3, 3)
    assert ParsingUtils.parse_shape("[4, 2, 1]") == (4, 2, 1)
    for text in ("", "2,3", "3,0", "a,b"):
        with pytest.raises(ParseError):
            ParsingUtils.parse_shape(text)


def test_yamanouchi_words():
    assert ParsingUtils.parse_yamanouchi(" +0- ") == YamanouchiWord("+0-")
    for text in ("0+-", "+x-"):
        with pytest.raises(ParseError):
            ParsingUtils.parse_yamanouchi(text)


def test_polynomials():
    assert ParsingUtils.parse_polynomial("v + 1") == LaurentPoly.v() + 1
    assert ParsingUtils.parse_polynomial("q^(1/2)") == LaurentPoly.half()


def test_web_files(tmp_path, kk):
    files = FileUtils()
    web = kk.tableau_to_web(StandardTableau.parse("13/25/46"))
    path = files.write_web(tmp_path / "nested" / "star.web", web)
    assert files.read_web(path) == web
    with pytest.raises(FileNotFoundError):
        files.read_text(tmp_path / "missing.web")
