from cevians.verify.suite import SUITES, CheckResult, format_table, run_suite

__all__ = ["SUITES", "CheckResult", "format_table", "run_suite"]
