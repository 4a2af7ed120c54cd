"""Unit tests for phase-sequence algebra and the phase-file format."""

import json
import math

import pytest
from mpmath import mp

from conftest import max_diff, oracle_sequence
from pulsenest import (
    ErrorModel,
    FamilySpec,
    Frame,
    FrameError,
    MalformedPhaseFileError,
    PhaseSequence,
    dump_phase_file,
    fidelity,
    fn_phases,
    from_toggling,
    is_antisymmetric,
    is_symmetric,
    load_phase_file,
    make_rotation,
    nest,
    normalize_phases,
    sequence_propagator,
    symmetric5_phases,
    to_toggling,
)

PI = math.pi
PSI = math.acos(-0.25)


def phases_close(a, b, tol=1e-12):
    return max(abs(float(x) - float(y)) for x, y in zip(a.phases, b.phases)) <= tol


# ---------------------------------------------------------------------------
# families


def test_fn_depth_zero_is_bare_pulse():
    seq = fn_phases(0)
    assert tuple(seq.phases) == (0.0,)
    assert seq.frame is Frame.APPLIED


def test_f1_phase_values():
    seq = fn_phases(1)
    expected = (3 * PSI, PSI, 0.0, -PSI, -3 * PSI)
    assert max(abs(a - b) for a, b in zip(seq.phases, expected)) < 1e-14


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_fn_length_is_power_of_five(n):
    assert len(fn_phases(n)) == 5**n


def test_fn_minus_branch_negates_phases():
    plus, minus = fn_phases(2, sign="+"), fn_phases(2, sign="-")
    assert max(abs(a + b) for a, b in zip(plus.phases, minus.phases)) < 1e-12


def test_fn_rejects_bad_args():
    with pytest.raises(ValueError):
        fn_phases(-1)
    with pytest.raises(ValueError):
        fn_phases(1, sign="x")


def test_fn_is_antisymmetric_through_depth_three():
    for n in range(4):
        assert is_antisymmetric(fn_phases(n))


def test_symmetric5_values_match_formulas():
    seq = symmetric5_phases("upper")
    alpha = -2 * math.asin((5 / 32) ** 0.25)
    beta = 2 * alpha + math.acos(-(1 + 2 * math.cos(alpha)) / 2)
    expected = (alpha, beta, 2 * beta - 2 * alpha, beta, alpha)
    assert max(abs(a - b) for a, b in zip(seq.phases, expected)) < 1e-14
    assert abs(alpha - (-1.3598037324418162)) < 1e-12


def test_symmetric5_is_symmetric_and_toggling_antisymmetric():
    for branch in ("upper", "lower"):
        seq = symmetric5_phases(branch)
        assert seq.phases[0] == seq.phases[4]
        assert seq.phases[1] == seq.phases[3]
        assert is_symmetric(seq)
        assert is_antisymmetric(to_toggling(seq))


def test_symmetric5_rejects_bad_branch():
    with pytest.raises(ValueError):
        symmetric5_phases("middle")


def test_family_spec_builds():
    assert len(FamilySpec("fn", n=2).build()) == 25
    assert len(FamilySpec("symmetric5").build()) == 5
    with pytest.raises(ValueError):
        FamilySpec("custom").build()


# ---------------------------------------------------------------------------
# frame transforms


def test_f1_toggling_phases():
    tog = to_toggling(fn_phases(1))
    expected = (3 * PSI, 5 * PSI, 4 * PSI, 5 * PSI, 3 * PSI)
    assert tog.frame is Frame.TOGGLING
    assert max(abs(a - b) for a, b in zip(tog.phases, expected)) < 1e-13


def test_toggling_of_zeros_is_zeros():
    seq = PhaseSequence((0.0,) * 5, Frame.APPLIED)
    assert tuple(to_toggling(seq).phases) == (0.0,) * 5


def test_toggling_pair_formula(rng):
    for _ in range(20):
        a, b = rng.uniform(-PI, PI, size=2)
        tog = to_toggling(PhaseSequence((a, b), Frame.APPLIED))
        assert abs(tog.phases[0] - a) < 1e-15
        assert abs(tog.phases[1] - (2 * a - b)) < 1e-15


def test_from_toggling_recovers_f1():
    tog = PhaseSequence(
        (3 * PSI, 5 * PSI, 4 * PSI, 5 * PSI, 3 * PSI), Frame.TOGGLING
    )
    back = from_toggling(tog)
    assert phases_close(back, fn_phases(1), 1e-13)


def test_single_zero_roundtrip():
    seq = PhaseSequence((0.0,), Frame.TOGGLING)
    assert tuple(from_toggling(seq).phases) == (0.0,)


def test_toggling_roundtrip_random(rng):
    for _ in range(100):
        seq = PhaseSequence(tuple(rng.uniform(-PI, PI, size=9)), Frame.APPLIED)
        assert phases_close(from_toggling(to_toggling(seq)), seq, 1e-12)


def test_transforms_enforce_frames():
    with pytest.raises(FrameError):
        to_toggling(to_toggling(fn_phases(1)))
    with pytest.raises(FrameError):
        from_toggling(fn_phases(1))


# ---------------------------------------------------------------------------
# nesting


def test_nest_reproduces_recursion():
    f1 = fn_phases(1)
    assert phases_close(nest(f1, f1), fn_phases(2), 1e-12)


def test_nest_with_identity_outer_and_inner():
    f1 = fn_phases(1)
    single = PhaseSequence((0.0,), Frame.APPLIED)
    assert phases_close(nest(single, f1), f1, 1e-14)
    assert phases_close(nest(f1, single), f1, 1e-14)


def test_nest_is_associative(rng):
    seqs = [
        PhaseSequence(tuple(rng.uniform(-PI, PI, size=3)), Frame.APPLIED)
        for _ in range(3)
    ]
    a, b, c = seqs
    left = nest(nest(a, b), c)
    right = nest(a, nest(b, c))
    assert phases_close(left, right, 1e-12)


def test_nest_length_multiplies():
    assert len(nest(fn_phases(1), symmetric5_phases())) == 25


# ---------------------------------------------------------------------------
# symmetry predicates


def test_predicates_on_f1():
    assert is_antisymmetric(fn_phases(1))
    assert not is_symmetric(fn_phases(1))
    assert is_symmetric(to_toggling(fn_phases(1)))


def test_predicates_plain_pair_is_neither():
    seq = PhaseSequence((0.0, PI / 3), Frame.APPLIED)
    assert not is_antisymmetric(seq)
    assert not is_symmetric(seq)


def test_predicates_compare_modulo_two_pi():
    seq = PhaseSequence((1.0, 2 * PI - 1.0), Frame.APPLIED)
    assert is_antisymmetric(seq)
    seq = PhaseSequence((1.0, 1.0 + 2 * PI), Frame.APPLIED)
    assert is_symmetric(seq)


def test_normalize_phases_range():
    seq = normalize_phases(fn_phases(1))
    assert all(-PI < float(p) <= PI for p in seq.phases)
    assert abs(float(seq.phases[0]) - (3 * PSI - 2 * PI)) < 1e-14
    # pi maps to itself, -pi wraps to +pi
    edge = normalize_phases(PhaseSequence((PI, -PI), Frame.APPLIED))
    assert abs(edge.phases[0] - PI) < 1e-15
    assert abs(edge.phases[1] - PI) < 1e-15


def test_sequence_requires_nonempty():
    with pytest.raises(ValueError):
        PhaseSequence((), Frame.APPLIED)


# ---------------------------------------------------------------------------
# propagators


def test_antisymmetric_sequences_give_not_gate(rng):
    from conftest import random_antisymmetric

    target = make_rotation(PI, 0.0)
    for _ in range(50):
        seq = random_antisymmetric(rng, int(rng.integers(1, 6)) * 2 + 1)
        fid = fidelity(target, sequence_propagator(seq, ErrorModel()))
        assert abs(float(fid) - 1) < 1e-12


def test_f1_propagator_against_oracle():
    seq = fn_phases(1)
    got = sequence_propagator(seq, ErrorModel(epsilon=0.2))
    assert max_diff(got, oracle_sequence(seq.phases, 0.2)) < 1e-12
    infid = 1 - float(fidelity(make_rotation(PI, 0.0), got))
    assert 1e-4 < infid < 1e-3  # sixth-order suppression regime at eps = 0.2


def test_single_pulse_fidelity_is_cosine():
    seq = PhaseSequence((0.0,), Frame.APPLIED)
    for eps in (0.1, 0.37, 0.5):
        got = fidelity(make_rotation(PI, 0.0), sequence_propagator(seq, ErrorModel(eps)))
        assert abs(float(got) - abs(math.cos(eps * PI / 2))) < 1e-13


def test_propagator_requires_applied_frame():
    with pytest.raises(FrameError):
        sequence_propagator(to_toggling(fn_phases(1)), ErrorModel())


def test_propagator_off_resonance_against_oracle(rng):
    seq = PhaseSequence(tuple(rng.uniform(-PI, PI, size=3)), Frame.APPLIED)
    got = sequence_propagator(seq, ErrorModel(epsilon=0.1, f=0.2))
    assert max_diff(got, oracle_sequence(seq.phases, 0.1, 0.2)) < 1e-12


# ---------------------------------------------------------------------------
# phase files


def test_phase_file_roundtrip_double(tmp_path):
    path = tmp_path / "f1.json"
    seq = fn_phases(1)
    dump_phase_file(seq, path)
    back = load_phase_file(path)
    assert back.frame is Frame.APPLIED
    assert back.label == "F1"
    assert tuple(back.phases) == tuple(seq.phases)  # repr round-trips floats


def test_phase_file_carries_17_significant_digits(tmp_path):
    path = tmp_path / "f1.json"
    dump_phase_file(fn_phases(1), path)
    doc = json.loads(path.read_text())
    assert doc["phases_radians"][1] == PSI
    assert len(repr(doc["phases_radians"][1]).replace("-", "").replace(".", "")) >= 16


def test_phase_file_high_precision_roundtrip(tmp_path):
    path = tmp_path / "f1_hp.json"
    seq = fn_phases(1, digits=50)
    dump_phase_file(seq, path, digits=50)
    back = load_phase_file(path, digits=50)
    with mp.workdps(60):
        dev = max(abs(mp.mpf(a) - mp.mpf(b)) for a, b in zip(back.phases, seq.phases))
        assert dev < mp.mpf(10) ** -48


def test_phase_file_config_block_ignored_on_read(tmp_path):
    path = tmp_path / "cfg.json"
    dump_phase_file(fn_phases(0), path, config={"command": "sequence", "n": 0})
    doc = json.loads(path.read_text())
    assert doc["config"]["command"] == "sequence"
    assert len(load_phase_file(path)) == 1


@pytest.mark.parametrize(
    "payload",
    [
        "not json at all",
        '{"frame": "applied"}',
        '{"frame": "sideways", "phases_radians": [0.0]}',
        '{"frame": "applied", "phases_radians": []}',
        '{"frame": "applied", "phases_radians": ["x"]}',
        '{"frame": "applied", "phases_radians": [0.0], "label": 3}',
        "[1, 2, 3]",
    ],
)
def test_phase_file_rejects_malformed(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(payload)
    with pytest.raises(MalformedPhaseFileError):
        load_phase_file(path)


def test_phase_file_missing_raises(tmp_path):
    with pytest.raises(MalformedPhaseFileError):
        load_phase_file(tmp_path / "nope.json")
