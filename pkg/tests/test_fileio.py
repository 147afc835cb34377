"""Serialization tests: exact JSON instance round-trips, strict validation
with field-accurate errors, dual rational/decimal result fields, and the
sweep CSV format.
"""

import io
import json
from fractions import Fraction as F

import pytest

from flp import (
    InfeasibleError,
    Instance,
    Lottery,
    ParseError,
    Solution,
    Variant,
    dump_instance,
    instance_digest,
    instance_from_dict,
    instance_to_dict,
    load_instance,
)
from flp.fileio import (
    SWEEP_COLUMNS,
    dual,
    float_15,
    lottery_to_list,
    read_sweep_csv,
    write_record,
    write_sweep_csv,
)


def sample_instance():
    return Instance((F(-1, 2), 0, 1, 2), 2, Variant.MAX)


class TestRoundTrip:
    def test_dict_round_trip_is_exact(self):
        inst = sample_instance()
        assert instance_from_dict(instance_to_dict(inst)) == inst

    def test_file_round_trip(self, tmp_path):
        path = str(tmp_path / "inst.json")
        inst = Instance((0, F(2361, 10000), 1), 2, Variant.SUM)
        dump_instance(inst, path)
        assert load_instance(path) == inst

    def test_serialized_form_is_stringly_exact(self):
        data = instance_to_dict(sample_instance())
        assert data["locations"] == ["-1/2", "0", "1", "2"]
        assert data["format"] == "flp-instance" and data["version"] == 1

    def test_digest_is_stable_and_sensitive(self):
        a = instance_digest(sample_instance())
        assert a == instance_digest(sample_instance())
        assert len(a) == 12 and all(c in "0123456789abcdef" for c in a)
        other = Instance((F(-1, 2), 0, 1, 3), 2, Variant.MAX)
        assert instance_digest(other) != a


class TestStrictParsing:
    def base(self):
        return {
            "format": "flp-instance",
            "version": 1,
            "variant": "sum",
            "k": 2,
            "locations": ["0", "1", "2"],
        }

    def test_top_level_must_be_object(self):
        with pytest.raises(ParseError, match="JSON object"):
            instance_from_dict([1, 2, 3])

    def test_format_checked(self):
        bad = self.base() | {"format": "something-else"}
        with pytest.raises(ParseError, match="'format'"):
            instance_from_dict(bad)

    def test_version_checked(self):
        bad = self.base() | {"version": 2}
        with pytest.raises(ParseError, match="version"):
            instance_from_dict(bad)

    def test_variant_checked(self):
        bad = self.base() | {"variant": "median"}
        with pytest.raises(ParseError, match="'variant'"):
            instance_from_dict(bad)

    def test_k_must_be_integer(self):
        for bad_k in ("2", 2.0, True, None):
            bad = self.base() | {"k": bad_k}
            with pytest.raises(ParseError, match="'k'"):
                instance_from_dict(bad)

    def test_float_location_names_index(self):
        bad = self.base() | {"locations": ["0", 0.5, "2"]}
        with pytest.raises(ParseError, match=r"locations\[1\].*float"):
            instance_from_dict(bad)

    def test_malformed_location_string_names_index(self):
        bad = self.base() | {"locations": ["0", "1", "2/0"]}
        with pytest.raises(ParseError, match=r"locations\[2\]"):
            instance_from_dict(bad)

    def test_integer_locations_accepted(self):
        data = self.base() | {"locations": [0, 1, 2]}
        assert instance_from_dict(data).locations == (0, 1, 2)

    def test_k_exceeding_n_is_infeasible_not_parse_error(self):
        bad = self.base() | {"k": 7}
        with pytest.raises(InfeasibleError):
            instance_from_dict(bad)

    def test_invalid_json_reports_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"format": "flp-instance",\n  "version": ]')
        with pytest.raises(ParseError, match="line 2 column"):
            load_instance(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="cannot read"):
            load_instance(str(tmp_path / "absent.json"))


class TestDualRepresentation:
    def test_dual_pairs(self):
        assert dual(F(2, 3)) == ("2/3", 0.666666666666667)
        assert dual(5) == ("5", 5.0)

    def test_float_15_rounds_to_15_significant_digits(self):
        assert float_15(F(1, 3)) == 0.333333333333333
        assert float_15(F(22, 21)) == 1.04761904761905

    def test_lottery_entries_sorted_and_dual(self):
        inst = Instance((0, 1, 3), 2, Variant.SUM)
        lot = Lottery(((Solution.of(1, 2), F(1, 3)), (Solution.of(0, 1), F(2, 3))))
        entries = lottery_to_list(inst, lot)
        assert [e["coordinates"] for e in entries] == [["0", "1"], ["1", "3"]]
        assert entries[0]["probability"] == "2/3"
        assert entries[0]["probability_float"] == 0.666666666666667
        assert entries[1]["agents"] == [1, 2]


class TestRecordsAndSweeps:
    def test_write_record_emits_pretty_json_with_newline(self):
        out = io.StringIO()
        write_record({"a": 1}, out)
        text = out.getvalue()
        assert text.endswith("\n")
        assert json.loads(text) == {"a": 1}

    def rows(self):
        return [
            {
                "seed_index": 0,
                "n": 3,
                "k": 2,
                "variant": "sum",
                "mech_cost": "3",
                "opt_cost": "2",
                "ratio": "3/2",
                "ratio_float": 1.5,
            },
            {
                "seed_index": 1,
                "n": 3,
                "k": 2,
                "variant": "sum",
                "mech_cost": "5",
                "opt_cost": "5",
                "ratio": "1",
                "ratio_float": 1.0,
            },
        ]

    def test_sweep_round_trip(self):
        out = io.StringIO()
        write_sweep_csv(self.rows(), out)
        text = out.getvalue()
        assert text.splitlines()[0] == ",".join(SWEEP_COLUMNS)
        rows, max_ratio = read_sweep_csv(text)
        assert len(rows) == 2
        assert rows[0]["ratio"] == "3/2"
        assert max_ratio == F(3, 2)

    def test_sweep_uses_unix_line_endings(self):
        out = io.StringIO()
        write_sweep_csv(self.rows(), out)
        assert "\r" not in out.getvalue()

    def test_empty_sweep_has_no_summary(self):
        out = io.StringIO()
        write_sweep_csv([], out)
        rows, max_ratio = read_sweep_csv(out.getvalue())
        assert rows == [] and max_ratio is None

    def test_header_validated(self):
        with pytest.raises(ParseError, match="header"):
            read_sweep_csv("a,b,c\n1,2,3\n")

    def test_empty_text_rejected(self):
        with pytest.raises(ParseError, match="empty"):
            read_sweep_csv("")

    def test_irrational_ratio_rejected(self):
        out = io.StringIO()
        write_sweep_csv(self.rows(), out)
        broken = out.getvalue().replace("3/2", "1.5x")
        with pytest.raises(ParseError, match="not rational"):
            read_sweep_csv(broken)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
