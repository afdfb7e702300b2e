import pytest

from arrkit_topology import (
    Budget,
    alexander_matrix,
    arrangement_group,
    beta_invariants,
    compute_lattice,
    congruence_images,
    kernel_homology,
    linearize,
    linearize_from_lattice,
    nu_invariants,
    poincare,
)


def test_corpus_is_complete(corpus):
    assert len(corpus) == 12
    for name, file in corpus.items():
        assert file.expected is not None, name
        assert file.expected.n == file.line_count(), name


def test_lattices_match_reference(corpus):
    """Combinatorics straight from each file, before any group is built."""
    for name, file in corpus.items():
        expected = file.expected
        lat = compute_lattice(file.to_arrangement())
        mult = lat.multiplicities()
        if expected.s is not None:
            assert mult.s == expected.s, name
        if expected.multiplicities:
            assert dict(mult.counts) == expected.multiplicities, name
        if expected.poincare:
            assert list(poincare(lat)) == expected.poincare, name


def test_slice_and_semidirect_groups_agree(corpus):
    arr = corpus["braid"].to_arrangement()
    sliced = arrangement_group(arr, route="slice")
    words = arrangement_group(arr, route="words")
    assert sliced.route == "slice" and words.route == "semidirect"
    for p, q in ((2, 3), (3, 2)):
        a = beta_invariants(alexander_matrix(sliced.presentation), p, q)
        b = beta_invariants(alexander_matrix(words.presentation), p, q)
        assert a.nonzero() == b.nonzero()


def test_linearizations_agree_on_file(corpus):
    arr = corpus["non-fano"].to_arrangement()
    matrix = alexander_matrix(arrangement_group(arr).presentation)
    lat = compute_lattice(arr)
    assert nu_invariants(linearize(matrix), 2).nonzero() == nu_invariants(linearize_from_lattice(lat), 2).nonzero()


def test_file_round_trip_keeps_fingerprint(corpus, tmp_path):
    from arrkit_cli.models import ArrangementFile

    file = corpus["maclane"]
    path = tmp_path / "maclane.json"
    path.write_text(file.dump(), encoding="utf-8")
    again = ArrangementFile.load(path)
    assert again.to_arrangement().fingerprint() == file.to_arrangement().fingerprint()


@pytest.mark.parametrize(
    "N, free_rank, torsion, budget",
    [
        (2, 32, (2, 2, 2, 2, 4), Budget()),
        pytest.param(3, 72, (3,) * 8, Budget(snf_entries=10**8), marks=pytest.mark.slow),
    ],
)
def test_maclane_congruence_cover_homology(corpus, N, free_rank, torsion, budget):
    pres = arrangement_group(corpus["maclane"].to_arrangement()).presentation
    # the full Jacobian over (Z_2)^8 has ~10^7 cells, most of them zero
    result = kernel_homology(pres, *congruence_images(pres.rank, N), budget)
    assert (result.free_rank, result.torsion, result.order) == (free_rank, torsion, N**8)


@pytest.mark.slow
def test_whole_corpus_agrees():
    from arrkit_cli.corpus import render_matrix, verify_corpus

    verdict = verify_corpus()
    assert verdict.ok, render_matrix(verdict)
