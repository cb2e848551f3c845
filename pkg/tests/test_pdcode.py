"""PD text format: round trips, error reporting, genus detection."""

import pytest

from tanglekit.diagram import close_numerator, emit_pd, parse_pd, rational_tangle_diagram, trivial_tangle
from tanglekit.errors import NonPlanarCode, PDSyntaxError
from tanglekit.experiments import pjh_tangle
from tanglekit.rational import reduce


class TestRoundTrip:
    def test_trivial(self):
        text = emit_pd(trivial_tangle())
        assert emit_pd(parse_pd(text)) == text

    def test_reference_fixture(self):
        with open("tests/fixtures/pjh.pd", encoding="utf-8") as fh:
            text = fh.read()
        d = parse_pd(text)
        assert d.n == 6 and d.k == 6
        assert emit_pd(d) == text
        assert d.canonical_code() == pjh_tangle().canonical_code()

    def test_closed_link(self):
        d = close_numerator(rational_tangle_diagram(reduce(5, 2)))
        text = emit_pd(d)
        d2 = parse_pd(text)
        assert emit_pd(d2) == text
        assert d2.canonical_code() == d.canonical_code()

    def test_random_diagrams(self):
        import random

        from tanglekit.census import random_diagram

        rng = random.Random(77)
        for _ in range(25):
            d = random_diagram(rng, rng.randint(0, 6), k=6)
            text = emit_pd(d)
            assert emit_pd(parse_pd(text)) == text

    def test_comments_and_blanks_ignored(self):
        text = emit_pd(trivial_tangle())
        noisy = "# header comment\n\n" + text.replace("\n", "\n# noise\n", 1)
        assert parse_pd(noisy).canonical_code() == trivial_tangle().canonical_code()


class TestErrors:
    def test_genus_one_rejected(self):
        with open("tests/fixtures/genus1.pd", encoding="utf-8") as fh:
            with pytest.raises(NonPlanarCode):
                parse_pd(fh.read())

    def test_missing_header(self):
        with pytest.raises(PDSyntaxError):
            parse_pd("X 1 2 3 4\n")

    def test_bad_crossing_line(self):
        with pytest.raises(PDSyntaxError) as err:
            parse_pd("tangle k=0 n=1\nX 1 2 3\nS a: 1\n")
        assert err.value.line == 2

    def test_arc_incidence_mismatch(self):
        with pytest.raises(PDSyntaxError):
            parse_pd("tangle k=1 n=1\nX 1 2 1 2\nB 1 2\nS a: 1,2\n")

    def test_unknown_record(self):
        with pytest.raises(PDSyntaxError):
            parse_pd("tangle k=0 n=0\nZ whatever\n")

    def test_boundary_count_mismatch(self):
        with pytest.raises(PDSyntaxError):
            parse_pd("tangle k=2 n=0\nB 1 1\nS a: 1\n")
