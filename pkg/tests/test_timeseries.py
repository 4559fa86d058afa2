import io
from datetime import date

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logigrow.errors import (
    AllMissing,
    LocationNotFound,
    MalformedRow,
    MissingColumn,
    MissingValue,
    SplitOutOfRange,
)
from logigrow.timeseries import (
    Dataset,
    MonotonicityWarning,
    Observation,
    TimeSeries,
    extract_series,
    parse_owid_csv,
    train_test_split,
)

HEADER = "location,date,total_cases,new_cases,total_deaths,new_deaths\n"


def csv_of(rows):
    return HEADER + "".join(rows)


class TestParse:
    def test_fixture_window_has_395_observations(self, senegal_dataset):
        assert len(senegal_dataset) == 395
        assert senegal_dataset.start_date == date(2022, 4, 1)
        assert senegal_dataset.end_date == date(2023, 4, 30)

    def test_inverted_range_is_empty_selection(self):
        raw = csv_of(["Senegal,2022-04-01,1,1,0,0\n"])
        with pytest.raises(LocationNotFound):
            parse_owid_csv(raw, "Senegal", date(2023, 1, 1), date(2022, 1, 1))

    def test_range_filter_drops_out_of_range_rows(self):
        raw = csv_of(
            [
                "Senegal,2022-04-01,10,1,0,0\n",
                "Senegal,2022-04-02,11,1,0,0\n",
                "Senegal,2022-05-09,12,1,0,0\n",
            ]
        )
        ds = parse_owid_csv(raw, "Senegal", date(2022, 4, 1), date(2022, 4, 30))
        assert len(ds) == 2

    def test_missing_column_detected(self):
        raw = "location,date,total_cases,new_cases,total_deaths\nSenegal,2022-04-01,1,1,0\n"
        with pytest.raises(MissingColumn):
            parse_owid_csv(raw, "Senegal", None, None)

    def test_malformed_date_reports_row_number(self):
        raw = csv_of(["Senegal,not-a-date,1,1,0,0\n"])
        with pytest.raises(MalformedRow) as err:
            parse_owid_csv(raw, "Senegal", None, None)
        assert err.value.row_number == 2

    def test_malformed_count_reports_row_number(self):
        raw = csv_of(
            ["Senegal,2022-04-01,1,1,0,0\n", "Senegal,2022-04-02,oops,1,0,0\n"]
        )
        with pytest.raises(MalformedRow) as err:
            parse_owid_csv(raw, "Senegal", None, None)
        assert err.value.row_number == 3

    def test_negative_count_rejected(self):
        raw = csv_of(["Senegal,2022-04-01,-5,1,0,0\n"])
        with pytest.raises(MalformedRow):
            parse_owid_csv(raw, "Senegal", None, None)

    def test_duplicate_date_rejected(self):
        raw = csv_of(
            ["Senegal,2022-04-01,1,1,0,0\n", "Senegal,2022-04-01,2,1,0,0\n"]
        )
        with pytest.raises(MalformedRow):
            parse_owid_csv(raw, "Senegal", None, None)

    def test_unknown_location(self):
        raw = csv_of(["Senegal,2022-04-01,1,1,0,0\n"])
        with pytest.raises(LocationNotFound):
            parse_owid_csv(raw, "Atlantis", None, None)

    def test_other_locations_and_extra_columns_ignored(self):
        raw = (
            "iso_code,location,date,total_cases,new_cases,total_deaths,new_deaths,extra\n"
            "SEN,Senegal,2022-04-01,10,1,2,0,x\n"
            "FRA,France,2022-04-01,bad,bad,bad,bad,y\n"
        )
        ds = parse_owid_csv(raw, "Senegal", None, None)
        assert len(ds) == 1
        assert ds.observations[0].total_cases == 10.0

    def test_empty_cells_become_missing(self):
        raw = csv_of(["Senegal,2022-04-01,10,,2,\n"])
        ds = parse_owid_csv(raw, "Senegal", None, None)
        obs = ds.observations[0]
        assert obs.new_cases is None and obs.new_deaths is None

    def test_rows_sorted_by_date(self):
        raw = csv_of(
            ["Senegal,2022-04-03,12,1,0,0\n", "Senegal,2022-04-01,10,1,0,0\n"]
        )
        ds = parse_owid_csv(raw, "Senegal", None, None)
        assert [o.date.day for o in ds.observations] == [1, 3]

    def test_accepts_bytes_and_binary_stream(self):
        raw = csv_of(["Senegal,2022-04-01,10,1,0,0\n"]).encode()
        assert len(parse_owid_csv(raw, "Senegal", None, None)) == 1
        assert len(parse_owid_csv(io.BytesIO(raw), "Senegal", None, None)) == 1

    def test_round_trip_export_reparse(self, senegal_dataset):
        text = senegal_dataset.to_csv()
        again = parse_owid_csv(text, "Senegal", None, None)
        assert again == senegal_dataset

    def test_export_has_canonical_column_order(self, senegal_dataset):
        first = senegal_dataset.to_csv().splitlines()[0]
        assert first == "location,date,total_cases,new_cases,total_deaths,new_deaths"


class TestObservationDataset:
    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            Observation(date=date(2022, 1, 1), total_cases=-1.0)

    def test_non_finite_count_rejected(self):
        with pytest.raises(ValueError):
            Observation(date=date(2022, 1, 1), new_cases=float("nan"))

    def test_dataset_requires_increasing_dates(self):
        o = Observation(date=date(2022, 1, 1), total_cases=1.0)
        with pytest.raises(ValueError):
            Dataset(location="X", observations=(o, o))


class TestExtract:
    def test_fixture_total_cases_forward_fill(self, senegal_dataset):
        series = extract_series(senegal_dataset, "total_cases", "forward_fill")
        assert len(series) == 395
        assert series.y.max() == 88997.0
        assert series.t[0] == 0

    def test_error_policy_never_errors_on_gap_free_fixture(self, senegal_dataset):
        for variable in ("total_cases", "new_cases", "total_deaths", "new_deaths"):
            series = extract_series(senegal_dataset, variable, "error")
            assert len(series) == 395

    def test_singleton_dataset(self):
        ds = Dataset(
            "X", (Observation(date=date(2022, 1, 5), total_cases=42.0),)
        )
        series = extract_series(ds, "total_cases")
        assert series.values == [(0, 42.0)]

    def test_drop_preserves_day_offsets(self):
        obs = [
            Observation(date=date(2022, 1, 1), new_cases=1.0),
            Observation(date=date(2022, 1, 2), new_cases=2.0),
            Observation(date=date(2022, 1, 3), new_cases=None),
            Observation(date=date(2022, 1, 4), new_cases=4.0),
        ]
        series = extract_series(Dataset("X", tuple(obs)), "new_cases", "drop")
        assert list(series.t) == [0, 1, 3]

    def test_forward_fill_carries_last_value(self):
        obs = [
            Observation(date=date(2022, 1, 1), total_cases=5.0),
            Observation(date=date(2022, 1, 2), total_cases=None),
            Observation(date=date(2022, 1, 3), total_cases=9.0),
        ]
        series = extract_series(Dataset("X", tuple(obs)), "total_cases", "forward_fill")
        assert list(series.y) == [5.0, 5.0, 9.0]

    def test_error_policy_raises_on_gap(self):
        obs = [
            Observation(date=date(2022, 1, 1), total_cases=5.0),
            Observation(date=date(2022, 1, 2), total_cases=None),
        ]
        with pytest.raises(MissingValue):
            extract_series(Dataset("X", tuple(obs)), "total_cases", "error")

    def test_all_missing(self):
        obs = [Observation(date=date(2022, 1, 1), total_cases=5.0)]
        with pytest.raises(AllMissing):
            extract_series(Dataset("X", tuple(obs)), "new_deaths")

    def test_default_policy_by_variable_kind(self):
        obs = [
            Observation(date=date(2022, 1, 1), total_cases=5.0, new_cases=1.0),
            Observation(date=date(2022, 1, 2), total_cases=None, new_cases=None),
            Observation(date=date(2022, 1, 3), total_cases=7.0, new_cases=2.0),
        ]
        ds = Dataset("X", tuple(obs))
        assert len(extract_series(ds, "total_cases")) == 3  # forward fill
        assert list(extract_series(ds, "new_cases").t) == [0, 2]  # drop

    def test_monotonicity_warning_on_revised_totals(self, senegal_dataset):
        with pytest.warns(MonotonicityWarning):
            extract_series(senegal_dataset, "total_cases")


class TestSplit:
    def test_fixture_split_at_365(self, total_cases):
        train, test = train_test_split(total_cases, 365)
        assert len(train) == 365
        assert len(test) == 30
        assert test.t[0] == 365  # original clock preserved

    def test_split_at_last_index_keeps_one_test_point(self, total_cases):
        train, test = train_test_split(total_cases, int(total_cases.t[-1]))
        assert len(test) == 1

    def test_split_at_zero_out_of_range(self, total_cases):
        with pytest.raises(SplitOutOfRange):
            train_test_split(total_cases, 0)

    def test_split_beyond_range(self, total_cases):
        with pytest.raises(SplitOutOfRange):
            train_test_split(total_cases, 1000)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 394))
    def test_partition_property(self, s):
        y = np.arange(395, dtype=float) ** 1.5 + 1.0
        series = TimeSeries("x", date(2022, 4, 1), np.arange(395), y)
        train, test = train_test_split(series, s)
        assert len(train) + len(test) == len(series)
        assert set(train.values) | set(test.values) == set(series.values)
        assert set(train.values) & set(test.values) == set()


class TestTimeSeriesType:
    def test_requires_increasing_t(self):
        with pytest.raises(ValueError):
            TimeSeries("x", date(2022, 1, 1), np.array([0, 0]), np.array([1.0, 2.0]))

    def test_requires_finite_y(self):
        with pytest.raises(ValueError):
            TimeSeries("x", date(2022, 1, 1), np.array([0, 1]), np.array([1.0, np.nan]))

    def test_arrays_are_immutable(self, total_cases):
        with pytest.raises(ValueError):
            total_cases.y[0] = 0.0

    def test_date_index_mapping(self, total_cases):
        assert total_cases.index_of(date(2023, 4, 1)) == 365
        assert total_cases.date_of(365) == date(2023, 4, 1)
