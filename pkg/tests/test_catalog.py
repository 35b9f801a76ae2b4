import pytest

from detquartic.catalog import get_entry, load_catalog, surface_entries


class TestCatalogShape:
    def test_counts(self, catalog, surfaces):
        assert len(catalog) == 32
        assert len(surfaces) == 31
        fixtures = [e for e in catalog if not e.is_surface]
        assert [e.name for e in fixtures] == ["line/(rank2-pair)"]

    def test_names_unique_and_sorted(self, catalog):
        names = [e.name for e in catalog]
        assert names == sorted(names)
        assert len(set(names)) == len(names)

    def test_surfaces_have_definite_point_and_claim(self, surfaces):
        for ent in surfaces:
            assert ent.definite_point is not None
            eta, rho, sigma = ent.claimed
            assert 0 <= sigma <= rho <= eta <= 8
            assert ent.pencil.is_definite_at(ent.definite_point).is_definite

    def test_every_eta_count_covered(self, surfaces):
        by_eta = {}
        for ent in surfaces:
            by_eta.setdefault(ent.claimed[0], 0)
            by_eta[ent.claimed[0]] += 1
        assert by_eta == {0: 1, 1: 2, 2: 4, 3: 6, 4: 8, 5: 3, 6: 2, 7: 2, 8: 3}


class TestLookup:
    def test_lookup_by_suffix(self):
        ent = get_entry("(2,2,1)")
        assert ent.name == "4.3/(2,2,1)"

    def test_lookup_by_full_name(self):
        assert get_entry("4.5/(4,4,0)").claimed == (4, 4, 0)

    def test_missing_key_raises(self):
        with pytest.raises(KeyError):
            get_entry("(9,9,9)")

    def test_fixture_lookup(self):
        ent = get_entry("line/(rank2-pair)")
        assert not ent.is_surface
        assert ent.definite_point is None
