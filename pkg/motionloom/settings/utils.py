from collections.abc import Mapping
from os import getenv
from pathlib import Path
from typing import Any

import orjson
import yaml
from pydantic import BaseModel, ValidationInfo

from motionloom.exceptions import ConfigError

DEFAULT_CONFIG_KEY: str = "default"


def pydantic_env_or_default(v: Any, info: ValidationInfo) -> Any:
    if info.field_name is None:
        return v
    return getenv(info.field_name, v)


def _parse(config_stream: Path | str | bytes) -> Any:
    match config_stream:
        case Path() if config_stream.suffix == ".json":
            return orjson.loads(config_stream.read_bytes())
        case Path():
            with config_stream.open() as f:
                return yaml.safe_load(f)
        case str() | bytes():
            return yaml.safe_load(config_stream)
        case _:
            raise ValueError(
                "config_stream must be a Path or text "
                f"recieved: {type(config_stream)}"
            )


def _read_config(config_stream: Path | str | bytes) -> dict[str, Any]:
    try:
        loaded = _parse(config_stream)
    except (yaml.YAMLError, orjson.JSONDecodeError) as exc:
        raise ConfigError(str(exc).splitlines()[0]) from exc
    if loaded is None:
        return {}
    if not isinstance(loaded, Mapping):
        raise ConfigError("document must be a mapping")
    if set(loaded) == {DEFAULT_CONFIG_KEY}:
        loaded = loaded[DEFAULT_CONFIG_KEY] or {}
    return dict(loaded)


def load_settings[T: BaseModel](
    settings_cls: type[T],
    config_stream: Path | str | bytes | None = None,
    **overrides: Any,
) -> T:
    loaded = _read_config(config_stream) if config_stream is not None else {}
    return settings_cls.model_validate(
        loaded | {k: v for k, v in overrides.items() if v is not None}
    )


def dump_settings(settings: BaseModel, yaml_mode: bool = False) -> str:
    data = settings.model_dump(mode="json")
    for name in type(settings).model_computed_fields:
        data.pop(name, None)
    if yaml_mode:
        return yaml.safe_dump(data, sort_keys=False)
    return orjson.dumps(data, option=orjson.OPT_INDENT_2).decode()
