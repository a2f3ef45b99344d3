from enum import Enum
from typing import Any, Optional

from schemas.field import CamelModel


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class CheckRecord(CamelModel):
    name: str
    module_id: Optional[str] = None
    status: CheckStatus
    witnesses: list[Any] = []
    details: dict[str, Any] = {}
    seconds: float = 0.0


class ConfigurationSummary(CamelModel):
    p: int
    e: int
    a: int
    c: int
    q: list[int]
    a_prime: int
    a_prime_literal: int
    a_prime_discrepancy: bool
    ext_degrees: list[int]
    degree_bound: int
    max_deg: int
    resolution_steps: int


class VerificationReport(CamelModel):
    catalog_version: int
    configuration: ConfigurationSummary
    checks: list[CheckRecord]
    passed: int
    failed: int
    inconclusive: int
    exit_code: int

    @classmethod
    def assemble(cls, catalog_version: int, configuration: ConfigurationSummary,
                 checks: list[CheckRecord]) -> "VerificationReport":
        counts = {status: sum(1 for c in checks if c.status == status) for status in CheckStatus}
        if counts[CheckStatus.FAIL]:
            exit_code = 1
        elif counts[CheckStatus.INCONCLUSIVE]:
            exit_code = 3
        else:
            exit_code = 0
        return cls(
            catalog_version=catalog_version,
            configuration=configuration,
            checks=checks,
            passed=counts[CheckStatus.PASS],
            failed=counts[CheckStatus.FAIL],
            inconclusive=counts[CheckStatus.INCONCLUSIVE],
            exit_code=exit_code,
        )


def combine(statuses: list[CheckStatus]) -> CheckStatus:
    """Fail dominates inconclusive, which dominates pass."""
    if CheckStatus.FAIL in statuses:
        return CheckStatus.FAIL
    if CheckStatus.INCONCLUSIVE in statuses:
        return CheckStatus.INCONCLUSIVE
    return CheckStatus.PASS
