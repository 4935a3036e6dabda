"""Проверки валидаторов настроек."""

from __future__ import annotations

from src.settings.validators import (
    CompositeValidator,
    EnumValidator,
    IntegerValidator,
    RangeValidator,
    TypeValidator,
)


def test_type_validator_success() -> None:
    assert TypeValidator(bool).validate(True) == (True, "")


def test_type_validator_failure() -> None:
    is_valid, error = TypeValidator(str).validate(123)
    assert not is_valid
    assert "str" in error


def test_integer_validator_rejects_bool() -> None:
    validator = IntegerValidator()
    assert validator.validate(7) == (True, "")
    is_valid, error = validator.validate(True)
    assert not is_valid
    assert "bool" in error


def test_range_validator_bounds() -> None:
    validator = RangeValidator(1, 10)
    assert validator.validate(5) == (True, "")
    is_valid, error = validator.validate(11)
    assert not is_valid
    assert "out of range" in error


def test_range_validator_open_upper_bound() -> None:
    assert RangeValidator(1).validate(10**9) == (True, "")


def test_enum_validator() -> None:
    validator = EnumValidator(["linear", "binary"])
    assert validator.validate("binary") == (True, "")
    is_valid, error = validator.validate("ternary")
    assert not is_valid
    assert "allowed values" in error


def test_composite_validator_stops_on_first_error() -> None:
    validator = CompositeValidator([IntegerValidator(), RangeValidator(0, 10)])
    is_valid, error = validator.validate("not int")
    assert not is_valid
    assert "type" in error


def test_composite_validator_all_pass() -> None:
    validator = CompositeValidator([IntegerValidator(), RangeValidator(0, 10)])
    assert validator.validate(3) == (True, "")
