"""File formats and the command-line front-end: round trips, byte-stable
output, exit codes, and CLI-vs-library equality."""

import json

import numpy as np
import pytest

import povmkit as pk
import povmkit.io as pio
from povmkit.cli import main
from povmkit.errors import NotHermitian


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def files(tmp_path):
    """Input files shared by the CLI tests."""
    paths = {}

    def dump(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        paths[name] = str(path)
        return str(path)

    dump("mixed.json", pio.matrix_to_json(np.eye(2) / 2))
    dump("pure.json", pio.matrix_to_json(np.diag([1.0, 0.0])))
    dump("povm.json", pio.povm_to_json(pk.tetrahedral_povm()))
    dump("zpovm.json", pio.povm_to_json(pk.projective_povm(np.eye(2))))

    rho = pk.random_density(2, 2, seed=3)
    dump("state.json", pio.matrix_to_json(rho.matrix))
    f = pk.frame_from_state(rho)
    samples = [pk.FrameFunctionSample(e, f(e)) for e in pk.spanning_effects(2)]
    dump("samples.json", pio.samples_to_json(samples))

    bell = pk.pure_state(np.array([1, 0, 0, 1]) / np.sqrt(2))
    pairs = []
    for ea in pk.spanning_effects(2):
        for eb in pk.spanning_effects(2):
            value = float(
                np.trace(bell.matrix @ np.kron(ea.matrix, eb.matrix)).real
            )
            pairs.append(((ea, eb), value))
    dump("bipartite.json", pio.bipartite_samples_to_json(pairs, (2, 2)))

    channel = pk.KrausChannelSet.from_single_kraus(
        [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
    )
    dump("kraus.json", pio.kraus_to_json(channel))

    components = [
        pk.DensityOperator(0.5 * (np.eye(2) + s * p.matrix))
        for p in (pk.SIGMA_X, pk.SIGMA_Y, pk.SIGMA_Z)
        for s in (1, -1)
    ]
    dump(
        "prior_a.json",
        pio.ensemble_to_json(
            pk.Ensemble([0.3, 0.1, 0.2, 0.1, 0.2, 0.1], components)
        ),
    )
    dump(
        "prior_b.json",
        pio.ensemble_to_json(
            pk.Ensemble([0.05, 0.35, 0.1, 0.2, 0.1, 0.2], components)
        ),
    )
    dump("true.json", pio.matrix_to_json(components[4].matrix))
    paths["tmp"] = str(tmp_path)
    return paths


class TestSerialization:
    def test_matrix_round_trip(self):
        m = np.array([[0.5, 0.1 + 0.2j], [0.1 - 0.2j, 0.5]])
        assert np.allclose(pio.matrix_from_json(pio.matrix_to_json(m)), m)

    def test_hermitian_rejected_on_load(self):
        bad = pio.matrix_to_json(np.array([[0.0, 1.0], [0.0, 0.0]]))
        with pytest.raises(NotHermitian):
            pio.hermitian_from_json(bad)

    def test_povm_round_trip(self):
        povm = pk.trine_povm()
        again = pio.povm_from_json(pio.povm_to_json(povm))
        for a, b in zip(again, povm):
            assert np.allclose(a.matrix, b.matrix)

    def test_samples_round_trip(self):
        rho = pk.random_density(2, 2, 0)
        f = pk.frame_from_state(rho)
        samples = [pk.FrameFunctionSample(e, f(e)) for e in pk.spanning_effects(2)]
        again = pio.samples_from_json(pio.samples_to_json(samples))
        assert len(again) == len(samples)
        assert np.isclose(again[0].value, samples[0].value)

    def test_kraus_round_trip(self):
        channel = pk.random_efficient_channel(2, 3, seed=1)
        again = pio.kraus_from_json(pio.kraus_to_json(channel))
        for ops_a, ops_b in zip(again.outcomes, channel.outcomes):
            assert np.allclose(ops_a[0], ops_b[0])

    def test_dilation_round_trip(self):
        dilation = pk.dilate_povm(pk.trine_povm())
        again = pio.dilation_from_json(pio.dilation_to_json(dilation))
        assert np.allclose(again.unitary.matrix, dilation.unitary.matrix)

    def test_ensemble_round_trip(self):
        ensemble = pk.Ensemble(
            [0.25, 0.75], [pk.random_density(2, 2, s) for s in (0, 1)]
        )
        again = pio.ensemble_from_json(pio.ensemble_to_json(ensemble))
        assert np.allclose(again.weights, ensemble.weights)

    def test_stable_dumps_formatting(self):
        text = pio.stable_json_dumps(
            {"a": 1.0 / 3.0, "b": [1, True, None], "c": -0.0}
        )
        assert text == '{"a": 0.333333333333, "b": [1, true, null], "c": 0}'

    def test_stable_dumps_is_deterministic(self):
        payload = {"x": np.pi, "y": [np.e, 2**-30]}
        assert pio.stable_json_dumps(payload) == pio.stable_json_dumps(payload)


class TestCliVerdicts:
    def test_validate_povm_accepts(self, capsys, files):
        code, out, _ = run_cli(capsys, "validate-povm", files["zpovm.json"])
        assert code == 0
        assert json.loads(out) == {"valid": True, "dim": 2, "outcomes": 2}

    def test_validate_povm_rejects(self, capsys, files, tmp_path):
        bad = tmp_path / "bad_povm.json"
        bad.write_text(
            json.dumps(
                {
                    "dim": 2,
                    "effects": [pio.matrix_to_json(0.9 * np.eye(2))],
                }
            )
        )
        code, out, _ = run_cli(capsys, "validate-povm", str(bad))
        assert code == 1
        assert json.loads(out)["valid"] is False

    def test_missing_file_is_parse_failure(self, capsys):
        code, _, err = run_cli(capsys, "validate-povm", "/nonexistent.json")
        assert code == 2
        assert "ParseFailure" in err

    def test_malformed_json_is_parse_failure(self, capsys, tmp_path):
        garbled = tmp_path / "garbled.json"
        garbled.write_text("{not json")
        code, _, _ = run_cli(capsys, "entropy", "--state", str(garbled))
        assert code == 2

    def test_domain_value_errors_exit_one(self, capsys):
        code, _, err = run_cli(capsys, "field-count", "--da", "1", "--db", "2")
        assert code == 1
        assert "ValueError" in err
        code, _, _ = run_cli(capsys, "real-demo", "--copies", "9")
        assert code == 1

    def test_bad_dims_flag_is_parse_failure(self, capsys, files):
        code, _, _ = run_cli(
            capsys,
            "reconstruct",
            "--samples", files["bipartite.json"],
            "--bipartite",
            "--dims", "two,2",
        )
        assert code == 2


class TestCliResults:
    def test_entropy_matches_library(self, capsys, files):
        code, out, _ = run_cli(capsys, "entropy", "--state", files["mixed.json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["von_neumann_bits"] == 1.0
        assert abs(payload["subentropy_bits"] - 0.2786524796) <= 1e-9
        assert payload["mean_entropy_bits"] == 1.0
        report = pk.uncertainty_report(pk.DensityOperator(np.eye(2) / 2))
        expected = pio.stable_json_dumps(
            {
                "von_neumann_bits": report.von_neumann_bits,
                "subentropy_bits": report.subentropy_bits,
                "mean_entropy_bits": report.mean_entropy_bits,
            }
        )
        assert out.strip() == expected

    def test_field_count(self, capsys):
        code, out, _ = run_cli(capsys, "field-count", "--da", "2", "--db", "2")
        assert code == 0
        assert json.loads(out) == {
            "complex": 16,
            "real_equations": 9,
            "real_unknowns": 10,
        }

    def test_reconstruct_round_trip(self, capsys, files):
        code, out, _ = run_cli(
            capsys, "reconstruct", "--samples", files["samples.json"]
        )
        assert code == 0
        payload = json.loads(out)
        recovered = pio.matrix_from_json(payload["state"])
        rho = pk.random_density(2, 2, seed=3)
        assert np.linalg.norm(recovered - rho.matrix) <= 1e-9
        assert payload["residual"] <= 1e-9

    def test_reconstruct_bipartite(self, capsys, files):
        code, out, _ = run_cli(
            capsys,
            "reconstruct",
            "--samples",
            files["bipartite.json"],
            "--bipartite",
            "--dims",
            "2,2",
        )
        assert code == 0
        payload = json.loads(out)
        bell = pk.pure_state(np.array([1, 0, 0, 1]) / np.sqrt(2))
        recovered = pio.matrix_from_json(payload["state"])
        assert np.linalg.norm(recovered - bell.matrix) <= 1e-9

    def test_measure_refinement_default(self, capsys, files):
        code, out, _ = run_cli(
            capsys,
            "measure",
            "--state", files["state.json"],
            "--povm", files["zpovm.json"],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["update"] == "bayes-refinement"
        rho = pk.random_density(2, 2, seed=3)
        expected = pk.born_probabilities(rho, pk.projective_povm(np.eye(2)))
        assert np.allclose(payload["probabilities"], expected)

    def test_measure_with_kraus(self, capsys, files):
        code, out, _ = run_cli(
            capsys,
            "measure",
            "--state", files["state.json"],
            "--povm", files["zpovm.json"],
            "--kraus", files["kraus.json"],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["update"] == "kraus"
        post0 = pio.matrix_from_json(payload["posteriors"][0])
        assert np.linalg.norm(post0 - np.diag([1.0, 0.0])) <= 1e-10

    def test_measure_rejects_mismatched_kraus(self, capsys, files):
        code, _, err = run_cli(
            capsys,
            "measure",
            "--state", files["state.json"],
            "--povm", files["povm.json"],
            "--kraus", files["kraus.json"],
        )
        assert code == 1
        assert "InconsistentSamples" in err

    def test_dilate_round_trip_verified(self, capsys, files):
        code, out, _ = run_cli(capsys, "dilate", "--povm", files["povm.json"])
        assert code == 0
        dilation = pio.dilation_from_json(json.loads(out))
        povm = pk.povm_from_dilation(dilation, 2)
        for a, b in zip(povm, pk.tetrahedral_povm()):
            assert np.linalg.norm(a.matrix - b.matrix) <= 1e-8

    def test_teleport(self, capsys, files):
        code, out, _ = run_cli(
            capsys, "teleport", "--state", files["pure.json"], "--seed", "5"
        )
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["verification_probability"] - 1.0) <= 1e-10
        assert payload["correction"] in ("I", "X", "Y", "Z")

    def test_teleport_rejects_mixed_state(self, capsys, files):
        code, _, err = run_cli(
            capsys, "teleport", "--state", files["mixed.json"], "--seed", "5"
        )
        assert code == 1
        assert "NotAState" in err

    def test_real_demo(self, capsys):
        code, out, _ = run_cli(capsys, "real-demo", "--copies", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["sigma2_coefficient"] == 1.0
        assert payload["max_abs_imag"] <= 1e-12

    def test_tomography_writes_csv(self, capsys, files, tmp_path):
        out_csv = str(tmp_path / "trajectory.csv")
        code, out, _ = run_cli(
            capsys,
            "tomography",
            "--prior-a", files["prior_a.json"],
            "--prior-b", files["prior_b.json"],
            "--true", files["true.json"],
            "--povm", files["povm.json"],
            "--shots", "60",
            "--seed", "7",
            "--out", out_csv,
        )
        assert code == 0
        lines = open(out_csv).read().splitlines()
        assert lines[0] == "step,outcome,dist_ab,dist_a_true,dist_b_true"
        assert len(lines) == 61
        summary = json.loads(out)
        assert summary["final_dist_ab"] == float(lines[-1].split(",")[2])


class TestCliByteStability:
    def test_all_subcommands_are_byte_stable(self, capsys, files, tmp_path):
        out_csv = str(tmp_path / "t.csv")
        commands = [
            ("validate-povm", files["povm.json"]),
            ("reconstruct", "--samples", files["samples.json"]),
            ("entropy", "--state", files["state.json"]),
            ("measure", "--state", files["state.json"], "--povm", files["zpovm.json"]),
            ("dilate", "--povm", files["zpovm.json"]),
            ("teleport", "--state", files["pure.json"], "--seed", "9"),
            (
                "tomography",
                "--prior-a", files["prior_a.json"],
                "--prior-b", files["prior_b.json"],
                "--true", files["true.json"],
                "--povm", files["povm.json"],
                "--shots", "25",
                "--seed", "11",
                "--out", out_csv,
            ),
            ("real-demo", "--copies", "2"),
            ("field-count", "--da", "2", "--db", "3"),
        ]
        for argv in commands:
            code_1, out_1, _ = run_cli(capsys, *argv)
            csv_1 = open(out_csv, "rb").read() if argv[0] == "tomography" else b""
            code_2, out_2, _ = run_cli(capsys, *argv)
            csv_2 = open(out_csv, "rb").read() if argv[0] == "tomography" else b""
            assert code_1 == code_2 == 0, argv[0]
            assert out_1.encode() == out_2.encode(), argv[0]
            assert csv_1 == csv_2, argv[0]
