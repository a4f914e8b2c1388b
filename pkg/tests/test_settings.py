from pathlib import Path

import orjson
import pytest
import yaml
from pydantic import ValidationError

from motionloom.data import DataSettings
from motionloom.exceptions import ConfigError
from motionloom.model import ModelSettings
from motionloom.settings.general import Settings
from motionloom.settings.utils import dump_settings, load_settings
from motionloom.training import LossKind, TrainSettings


def test_defaults() -> None:
    settings = Settings()
    assert (settings.PAST_WINDOW, settings.FUTURE_WINDOW) == (10, 10)
    assert settings.RECEPTIVE_FIELD == 10
    assert settings.RETAIN == 20
    assert settings.TRAIN_LENGTH == 60
    assert settings.history_length == 50
    assert settings.LR_DECAY**49 == pytest.approx(0.1)


@pytest.mark.parametrize(
    ("past", "future", "retain"), [(50, 10, 20), (10, 10, 20), (12, 4, 16)]
)
def test_effective_retain(past: int, future: int, retain: int) -> None:
    settings = ModelSettings(PAST_WINDOW=past, FUTURE_WINDOW=future)
    assert settings.RETAIN == retain


def test_yaml_default_section_is_unwrapped(tmp_path: Path) -> None:
    path = tmp_path / "config.yaml"
    path.write_text(
        yaml.safe_dump({"default": {"EPOCHS": 3, "LOSS_KIND": "angle_l1"}})
    )
    settings = load_settings(Settings, path)
    assert settings.EPOCHS == 3
    assert settings.LOSS_KIND is LossKind.ANGLE_L1


def test_json_config_and_overrides(tmp_path: Path) -> None:
    path = tmp_path / "config.json"
    path.write_bytes(orjson.dumps({"BATCH_SIZE": 4, "SEED": 9}))
    settings = load_settings(Settings, path, SEED=11, LOG_LEVEL=None)
    assert settings.BATCH_SIZE == 4
    assert settings.SEED == 11


def test_unknown_keys_are_rejected() -> None:
    with pytest.raises(ValidationError, match="Extra inputs"):
        load_settings(Settings, "LEARNING_RATE_TYPO: 0.1\n")


def test_non_mapping_document_is_rejected() -> None:
    with pytest.raises(ConfigError, match="must be a mapping"):
        load_settings(Settings, "- 1\n- 2\n")


def test_malformed_documents_are_config_errors(tmp_path: Path) -> None:
    with pytest.raises(ConfigError, match="invalid config"):
        load_settings(Settings, "EPOCHS: [1, 2\n")
    broken = tmp_path / "config.json"
    broken.write_text("{\"EPOCHS\": ")
    with pytest.raises(ConfigError):
        load_settings(Settings, broken)


@pytest.mark.parametrize(
    "fields",
    [
        {"PAST_WINDOW": 8},
        {"DCT_RETAIN": 21},
        {"LR_DECAY": 1.5},
        {"ADAM_BETA1": 1.0},
        {"GCN_DROPOUT": 1.0},
        {"TRAIN_LENGTH": 29},
    ],
)
def test_invalid_settings(fields: dict) -> None:
    with pytest.raises(ValidationError):
        Settings(**fields)


def test_train_length_message() -> None:
    with pytest.raises(ValidationError, match="need 30"):
        Settings(TRAIN_LENGTH=20)


def test_section_extracts_a_mixin() -> None:
    settings = Settings(EPOCHS=7, PAST_WINDOW=12, TRAIN_LENGTH=40)
    assert settings.section(TrainSettings).EPOCHS == 7
    assert settings.section(ModelSettings).PAST_WINDOW == 12
    assert settings.section(DataSettings).TRAIN_LENGTH == 40


def test_dump_omits_computed_fields() -> None:
    settings = ModelSettings(PAST_WINDOW=12, FUTURE_WINDOW=4)
    dumped = orjson.loads(dump_settings(settings))
    assert "RETAIN" not in dumped
    assert "SEGMENT_LENGTH" not in dumped
    assert ModelSettings.model_validate(dumped) == settings
    assert yaml.safe_load(dump_settings(settings, yaml_mode=True)) == dumped


def test_log_level_reads_environment(monkeypatch) -> None:
    monkeypatch.setenv("LOG_LEVEL", "DEBUG")
    assert Settings().LOG_LEVEL == "DEBUG"
