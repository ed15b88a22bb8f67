"""Server configuration: which models to serve and how."""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator


class ServerConfig(BaseModel):
    """Everything needed to bring the four scorers up.

    ``classifier_models`` maps a task name ("classification" or
    "entailment") to a model path or hub name.  All models are loaded at
    startup and the process fails fast if any of them cannot be.
    """

    port: int = 8000
    host: str = "127.0.0.1"
    mlm_model: str
    classifier_models: dict[str, str] = Field(default_factory=dict)
    encoder_model: str
    max_seq_len: int = 128
    device: str = "cpu"

    @field_validator("max_seq_len")
    @classmethod
    def _min_seq_len(cls, v: int) -> int:
        if v < 64:
            raise ValueError("max_seq_len must be >= 64")
        return v

    @field_validator("classifier_models")
    @classmethod
    def _known_tasks(cls, v: dict[str, str]) -> dict[str, str]:
        for task in v:
            if task not in ("classification", "entailment"):
                raise ValueError(f"unknown classifier task {task!r}")
        return v
