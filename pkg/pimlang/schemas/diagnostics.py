from pydantic import BaseModel, ConfigDict, Field

from pimlang.schemas.model import SourceSpan

SELF_CHECK_CONDITION = 8


class Diagnostic(BaseModel):
    """Lexer or parser message"""

    message: str
    span: SourceSpan

    model_config = ConfigDict(frozen=True)

    def render(self) -> str:
        return (
            f"error: {self.message} at line {self.span.line}, "
            f"column {self.span.column_start}"
        )


class Violation(BaseModel):
    """A failed sentence condition; 8 marks the self-association/duplicate check"""

    condition: int = Field(ge=1, le=SELF_CHECK_CONDITION)
    sentences: tuple[int, ...]
    message: str
    span: SourceSpan | None = None

    model_config = ConfigDict(frozen=True)
