from __future__ import annotations

import random

import pytest

from pcpgames import braids as br
from pcpgames import freegroup as fg
from pcpgames.braids import BraidError


def test_braid_word_free_cancellation():
    assert br.braid(3, [1, -1]).letters == ()
    assert br.braid(3, [1, 2, -2, -1]).letters == ()
    assert br.braid(3, [1, 2, 1]).letters == (1, 2, 1)
    with pytest.raises(BraidError):
        br.BraidWord(3, (1, -1))
    with pytest.raises(BraidError):
        br.braid(3, [3])


def test_parse_render_round_trip():
    w = br.parse_braid(3, "1 1 1 1 -2")
    assert w.letters == (1, 1, 1, 1, -2)
    assert br.parse_braid(3, w.render()) == w


def test_fundamental_braid():
    assert br.fundamental_braid(2).letters == (1,)
    d3 = br.fundamental_braid(3)
    assert d3.letters == (2, 1, 2)
    assert br.braids_equal(d3, br.braid(3, [1, 2, 1]))
    assert len(br.fundamental_braid(5)) == 10
    with pytest.raises(BraidError):
        br.fundamental_braid(1)


def test_braids_equal_examples():
    assert br.is_trivial(br.braid(3, [1, -1]))
    assert br.braids_equal(br.braid(3, [1, 2, 1]), br.braid(3, [2, 1, 2]))
    assert br.braids_equal(br.braid(5, [1, 3]), br.braid(5, [3, 1]))
    assert not br.braids_equal(br.braid(3, [1]), br.braid(3, [2]))
    with pytest.raises(BraidError):
        br.braids_equal(br.braid(3, [1]), br.braid(5, [1]))


def test_delta_squared_is_central():
    for gen in (1, 2):
        g = br.braid(3, [gen])
        assert br.braids_equal(br.concat(br.DELTA3_SQUARED, g), br.concat(g, br.DELTA3_SQUARED))


def test_garside_nf_canonical_values():
    nf = br.garside_nf(br.braid(3, []))
    assert nf.power == 0 and nf.factors == ()
    nf_delta = br.garside_nf(br.fundamental_braid(3))
    assert nf_delta.power == 1 and nf_delta.factors == ()
    nf_inv = br.garside_nf(br.braid(3, [-1]))
    assert nf_inv.power == -1 and len(nf_inv.factors) == 1


def test_garside_nf_structural_invariants():
    """Factors are never trivial or the half twist, and adjacent pairs are left-weighted."""
    rng = random.Random(77)
    for strands in (3, 5):
        identity = tuple(range(strands))
        half_twist = tuple(reversed(range(strands)))
        gens = [s * g for g in range(1, strands) for s in (1, -1)]
        for _ in range(150):
            w = br.braid(strands, [rng.choice(gens) for _ in range(rng.randrange(0, 16))])
            nf = br.garside_nf(w)
            for factor in nf.factors:
                assert factor != identity and factor != half_twist
            for left, right in zip(nf.factors, nf.factors[1:]):
                assert br._starting_set(right) <= br._finishing_set(left)


def test_garside_nf_reconstruction_round_trip():
    rng = random.Random(78)
    for strands in (3, 5):
        gens = [s * g for g in range(1, strands) for s in (1, -1)]
        for _ in range(100):
            w = br.braid(strands, [rng.choice(gens) for _ in range(rng.randrange(0, 14))])
            nf = br.garside_nf(w)
            rebuilt = br.nf_to_braid(nf)
            assert br.garside_nf(rebuilt) == nf
            if strands == 3:
                assert br.burau3(rebuilt) == br.burau3(w)


def test_factor_word_lifts_permutation():
    perm = br.perm_of_braid(br.braid(5, [1, 3, 2]))
    lifted = br.factor_word(perm)
    assert br.perm_of_braid(br.BraidWord(5, lifted)) == perm


def test_burau_identity_and_artin():
    assert br.burau3(br.braid(3, [])) == br._BURAU_IDENTITY
    assert br.burau3(br.braid(3, [1, -1])) == br._BURAU_IDENTITY
    assert br.burau3(br.braid(3, [1, 2, 1])) == br.burau3(br.braid(3, [2, 1, 2]))
    with pytest.raises(BraidError):
        br.burau3(br.braid(5, [1]))


def test_burau_delta_squared_is_scalar():
    image = br.burau3(br.DELTA3_SQUARED)
    assert br.burau3_is_scalar(image)
    # the scalar is t^3, computed by the multiplication oracle itself
    assert image[0][0] == ((3, 1),)


def test_triple_oracle_agreement_fuzz():
    rng = random.Random(11)
    for _ in range(300):
        length = rng.randrange(0, 21)
        w = br.braid(3, [rng.choice([1, -1, 2, -2]) for _ in range(length)])
        garside = br.is_trivial(w)
        burau = br.burau3(w) == br._BURAU_IDENTITY
        assert garside == burau
        if length <= 8:
            assert br.trivial_by_search(w) == garside


def test_canonicity_against_rewriting_search():
    rng = random.Random(23)
    for _ in range(150):
        u = br.braid(3, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(0, 5))])
        v = br.braid(3, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(0, 5))])
        assert br.braids_equal(u, v) == br.trivial_by_search(br.concat(u, br.invert(v)))


def test_search_handles_known_trivials():
    assert br.trivial_by_search(br.braid(3, [1, 2, 1, -2, -1, -2]))
    assert br.trivial_by_search(br.braid(3, [2, 1, 2, 2, 1, 2, -1, -2, -1, -1, -2, -1]))
    assert not br.trivial_by_search(br.braid(3, [1, 2]))


def test_exponent_sum_and_permutation_filters():
    w = br.braid(3, [1, 2, -1, -2])  # exponent sum 0, nontrivial
    assert br.exponent_sum(w) == 0
    assert br.perm_of_braid(w) != (0, 1, 2)
    assert not br.is_trivial_fast(w)
    assert br.is_trivial_fast(br.braid(3, []))
    assert not br.is_trivial_fast(br.braid(3, [1]))


def test_is_trivial_fast_matches_garside_fuzz():
    rng = random.Random(41)
    for strands in (3, 5):
        gens = [s * g for g in range(1, strands) for s in (1, -1)]
        for _ in range(200):
            w = br.braid(strands, [rng.choice(gens) for _ in range(rng.randrange(0, 14))])
            assert br.is_trivial_fast(w) == br.is_trivial(w)


def test_b3_encode_lengths():
    for j in range(1, 11):
        alphabet = fg.RankedAlphabet(tuple(f"z{i}" for i in range(1, j + 1)))
        encoded = br.b3_encode(fg.alpha_encode(fg.word(f"z{j}"), alphabet))
        assert len(encoded) == 8 * j + 4


def test_b3_encode_trivial_iff_trivial_pair():
    assert br.is_trivial_fast(br.b3_encode(fg.EPSILON, 0))
    for w in fg.all_reduced_words(("c", "d"), 4):
        for x in (-2, -1, 0, 1, 2):
            encoded = br.b3_encode(w, x)
            assert br.is_trivial_fast(encoded) == (fg.is_identity(w) and x == 0)


def test_b3_encode_rejects_non_binary_letters():
    with pytest.raises(BraidError):
        br.b3_encode(fg.word("z1"), 0)


def test_b3_encode_homomorphic_in_word():
    rng = random.Random(314)
    letters = [("c", 1), ("c", -1), ("d", 1), ("d", -1)]
    for _ in range(150):
        u = fg.reduce(rng.choice(letters) for _ in range(rng.randrange(0, 7)))
        v = fg.reduce(rng.choice(letters) for _ in range(rng.randrange(0, 7)))
        combined = br.b3_encode(fg.concat(u, v), 0)
        stepwise = br.concat(br.b3_encode(u, 0), br.b3_encode(v, 0))
        assert combined == stepwise


def test_b5_subgroup_generators_commute():
    gens = {
        "first1": br.braid(5, [1] * 4),
        "first2": br.braid(5, [2] * 4),
        "second1": br.braid(5, [4] * 2),
        "second2": br.braid(5, br.B5_D_WORD),
    }
    for x in ("first1", "first2"):
        for y in ("second1", "second2"):
            commutator = br.concat(
                br.concat(gens[x], gens[y]),
                br.concat(br.invert(gens[x]), br.invert(gens[y])),
            )
            assert br.is_trivial(commutator)


def test_b5_second_component_rank_two():
    assert br.b5_encode(fg.EPSILON, fg.word("r")) == br.braid(5, [4, 4])
    assert br.b5_encode(fg.EPSILON, fg.word("t")) == br.braid(5, br.B5_D_WORD)
    assert br.b5_encode(fg.EPSILON, fg.word("~t")) == br.invert(br.braid(5, br.B5_D_WORD))


def test_b5_encode_trivial_iff_both_empty():
    assert br.is_trivial_fast(br.b5_encode(fg.EPSILON, fg.EPSILON))
    counter_words = [fg.power(fg.word("r"), k) for k in range(-3, 4)]
    for w in fg.all_reduced_words(("c", "d"), 3):
        for cw in counter_words:
            encoded = br.b5_encode(w, cw)
            expected = fg.is_identity(w) and fg.is_identity(cw)
            assert br.is_trivial_fast(encoded) == expected


def test_braid3_game_shapes(pipelines):
    pipe = pipelines["i1"]
    game = pipe.braid3_game
    source = pipe.binary_weighted_game
    assert game.strands == 3
    # defender letter move: alpha-then-sigma encoding, no central twist factor
    expected = br.b3_encode(source.defender_moves[0].word, 0)
    assert game.defender_braids[0] == expected
    # initial braid encodes the initial-state letter: nontrivial
    assert not br.is_trivial_fast(game.initial_braid)


def test_braid5_game_shapes(pipelines):
    pipe = pipelines["i1"]
    game = pipe.braid5_game
    assert game.strands == 5
    assert not br.is_trivial_fast(game.initial_braid)
    assert game.defender_braids[0] == br.b5_encode(
        pipe.binary_pair_game.defender_moves[0].word, fg.EPSILON
    )


def test_braid_game_dispatch(pipelines):
    pipe = pipelines["eq"]
    assert br.build_braid_game(pipe.binary_weighted_game).strands == 3
    assert br.build_braid_game(pipe.binary_pair_game).strands == 5
    with pytest.raises(BraidError):
        br.build_braid_game(pipe.weighted_game)  # not binarized
    with pytest.raises(BraidError):
        br.build_braid_game("nonsense")


def test_word_game_target_reaches_trivial_braid(pipelines):
    """A play reaching (eps, 0) in the word game unbraids the braid configuration."""
    pipe = pipelines["eq"]
    from pcpgames import engine
    from pcpgames.domains import WordGameDomain

    word_dom = WordGameDomain(pipe.weighted_game)
    result = engine.attacker_wins_within(word_dom, 2)
    assert result.attacker_wins
    braid_dom = pipe.domain("braid3")
    cfg = braid_dom.initial_config()
    wcfg = word_dom.initial_config()
    for rnd in (1, 2):
        remaining = 2 - rnd + 1
        wcfg = word_dom.apply(wcfg, "D", 0)
        cfg = braid_dom.apply(cfg, "D", 0)
        a = result.strategy[(word_dom.canonical_key(wcfg), remaining)]
        wcfg = word_dom.apply(wcfg, "A", a)
        cfg = braid_dom.apply(cfg, "A", a)
        if word_dom.is_target(wcfg):
            break
    assert word_dom.is_target(wcfg)
    assert braid_dom.is_target(cfg)
    assert br.is_trivial_fast(cfg.braid)


def test_dump_braid_game(pipelines):
    text = br.dump_braid_game(pipelines["i1"].braid3_game)
    assert text.startswith("strands 3\n")
    assert "player=A braid=" in text
