from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class Command(BaseModel):
    """
    A subcommand exposed by the command-line interface.
    """
    name: str
    description: Optional[str] = None
    # keyword arguments for argparse's add_argument, plus "flags"
    arguments: List[Dict[str, Any]] = Field(default_factory=list)


class CommandResult(BaseModel):
    """
    What a subcommand hands back to the dispatcher: an exit code, a text
    report and the same report as a record for --json.
    """
    exitCode: int = 0
    text: str = ""
    record: Dict[str, Any] = Field(default_factory=dict)


class CheckResult(BaseModel):
    name: str
    passed: bool
    value: Optional[float] = None
    detail: str = ""


class SuiteReport(BaseModel):
    suite: str
    checks: List[CheckResult] = Field(default_factory=list)
    passed: bool = True
