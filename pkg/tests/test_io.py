import io as stringio
import json

import numpy as np
import pytest

from photon_slh import ModelError, ModelFormatError
from photon_slh.entities.model_entities import SLHModel
from photon_slh.entities.pulse_entities import Pulse, TimeGrid
from photon_slh.io import (dumps_model, loads_model, model_to_dict, read_model, read_pulse, write_model,
                           write_pulse, write_spectrum, write_sweep)
from photon_slh.network import gradient_echo_memory, two_channel_model
from photon_slh.operators import sigma_minus, sigma_x, sigma_z
from photon_slh.pulses import fourier, make_pulse
from photon_slh.transfer import frequency_response, from_model

DOCUMENTED_MODEL = """
{"levels": 2, "channels": 1,
 "S": [[[1, 0]]], "theta": [[1, 0]],
 "L0": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]],
 "H0": [[[-0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}
"""


class TestModelFiles:

    def test_documented_example(self):
        model = loads_model(DOCUMENTED_MODEL)
        assert model.levels == 2 and model.channels == 1
        assert model.L0 == sigma_minus()
        assert model.H0.allclose(sigma_z() * 0.5, atol=0)

    @pytest.mark.parametrize('model', [
        two_channel_model(1.0, 0.5, 2.0, S=np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)),
        gradient_echo_memory(2, kappa=1.0, omega_c=[1.0, -0.5]),
        SLHModel(S=np.eye(2), H0=sigma_z(), couplings=[sigma_minus(), sigma_x()]),
    ], ids=['beamsplitter', 'memory', 'unfactorized'])
    def test_round_trip(self, model, tmp_path):
        path = tmp_path / 'model.json'
        write_model(model, path)
        again = read_model(path)
        assert again.is_factorized == model.is_factorized
        np.testing.assert_array_equal(again.S, model.S)
        assert again.H0 == model.H0
        assert again.couplings == model.couplings

    def test_unfactorized_models_carry_couplings(self):
        model = SLHModel(S=np.eye(2), H0=sigma_z(), couplings=[sigma_minus(), sigma_x()])
        document = model_to_dict(model)
        assert 'theta' not in document and 'L0' not in document
        assert len(document['L']) == 2

    def test_malformed_json_reports_position(self):
        with pytest.raises(ModelFormatError) as e:
            loads_model('{"levels": 2,\n "channels": }')
        assert (e.value.line, e.value.column) == (2, 14)
        assert "line 2, column 14" in str(e.value)

    def test_empty_file(self):
        with pytest.raises(ModelFormatError, match="not valid JSON"):
            loads_model("")

    def test_not_an_object(self):
        with pytest.raises(ModelFormatError, match="JSON object"):
            loads_model("[1, 2]")

    @pytest.mark.parametrize('key', ['levels', 'channels', 'S', 'H0'])
    def test_missing_field(self, key):
        document = json.loads(DOCUMENTED_MODEL)
        del document[key]
        with pytest.raises(ModelFormatError, match=f'"{key}"'):
            loads_model(json.dumps(document))

    def test_missing_coupling(self):
        document = json.loads(DOCUMENTED_MODEL)
        del document['L0']
        with pytest.raises(ModelFormatError, match='"L0" is missing'):
            loads_model(json.dumps(document))

    @pytest.mark.parametrize('key, value', [
        ('levels', 0), ('levels', True), ('channels', 1.5), ('theta', [[1, 0], [0, 0]]), ('S', [[1, 0]]),
        ('H0', "diag"),
    ])
    def test_bad_values(self, key, value):
        document = json.loads(DOCUMENTED_MODEL)
        document[key] = value
        with pytest.raises(ModelFormatError):
            loads_model(json.dumps(document))

    def test_wrong_number_of_couplings(self):
        document = json.loads(dumps_model(SLHModel(S=np.eye(2), H0=sigma_z(), couplings=[sigma_minus(), sigma_x()])))
        document['L'] = document['L'][:1]
        with pytest.raises(ModelFormatError, match="2 coupling matrices"):
            loads_model(json.dumps(document))

    def test_physical_checks_still_apply(self):
        document = json.loads(DOCUMENTED_MODEL)
        document['S'] = [[[2, 0]]]
        with pytest.raises(ModelError, match="unitary"):
            loads_model(json.dumps(document))

    def test_unreadable_path(self, tmp_path):
        with pytest.raises(OSError):
            read_model(tmp_path / 'missing.json')


class TestPulseFiles:

    def test_round_trip(self, rng):
        grid = TimeGrid(-2.0, 0.125, 32)
        samples = rng.normal(size=(32, 2)) + 1j * rng.normal(size=(32, 2))
        stream = stringio.StringIO()
        write_pulse(Pulse.from_samples(grid, samples), stream)
        stream.seek(0)
        pulse = read_pulse(stream)
        assert pulse.grid == grid
        np.testing.assert_array_equal(pulse.samples, samples)

    def test_layout(self):
        stream = stringio.StringIO()
        write_pulse(make_pulse('square', TimeGrid(-2.0, 1.0, 4), channels=2, channel=1), stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == "t,ch,re,im"
        assert len(lines) == 1 + 4 * 2
        assert lines[1].split(",")[:2] == ["-2.0000000000000000e+00", "1"]
        assert lines[8].split(",")[1] == "2"

    def test_bad_header(self):
        with pytest.raises(ModelFormatError, match="header"):
            read_pulse(stringio.StringIO("time,channel,re,im\n0,1,0,0\n"))

    def test_bad_row(self):
        with pytest.raises(ModelFormatError) as e:
            read_pulse(stringio.StringIO("t,ch,re,im\n0,1,0,0\n1,1,zero,0\n"))
        assert e.value.line == 3

    def test_channels_start_at_one(self):
        with pytest.raises(ModelFormatError, match="start at 1"):
            read_pulse(stringio.StringIO("t,ch,re,im\n0,0,0,0\n"))

    def test_irregular_times(self):
        with pytest.raises(ModelFormatError, match="uniformly"):
            read_pulse(stringio.StringIO("t,ch,re,im\n0,1,0,0\n1,1,0,0\n3,1,0,0\n4,1,0,0\n"))

    def test_grid_must_be_a_power_of_two(self):
        with pytest.raises(ModelFormatError, match="usable grid"):
            read_pulse(stringio.StringIO("t,ch,re,im\n0,1,0,0\n1,1,0,0\n2,1,0,0\n"))

    def test_no_samples(self):
        with pytest.raises(ModelFormatError, match="no samples"):
            read_pulse(stringio.StringIO("t,ch,re,im\n"))


class TestTables:

    def test_spectrum(self):
        stream = stringio.StringIO()
        write_spectrum(fourier(make_pulse('gaussian', TimeGrid(-4.0, 0.5, 16))), stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == "omega,ch,re,im"
        assert len(lines) == 17

    def test_sweep(self, two_channel_atom):
        response = frequency_response(from_model(two_channel_atom), [-2.0, 0.0])
        stream = stringio.StringIO()
        write_sweep(response, stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == "omega,i,j,re,im,abs2"
        assert len(lines) == 1 + 2 * 4
        assert [line.split(",")[1:3] for line in lines[1:5]] == [["1", "1"], ["1", "2"], ["2", "1"], ["2", "2"]]
        abs2 = sum(float(line.split(",")[5]) for line in lines[1:5:2])
        assert abs2 == pytest.approx(1)
