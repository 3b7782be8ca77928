"""
Custom test runner for descentlink.

Prints gtest-style progress lines with coloured status tags. The numerical
suites contain a few long solver sweeps, so the run ends with the slowest
tests listed and, in verbose mode, the tracebacks of every failure.
"""

import time
import unittest
from typing import Dict, Optional

from termcolor import colored

BAR = colored('[----------]', 'green')
DOUBLE_BAR = colored('[==========]', 'green')

STATUS_TAGS = {
    "ok": colored('[       OK ]', 'green'),
    "error": colored('[     ERROR]', 'red'),
    "fail": colored('[   FAILED ]', 'red'),
    "skip": colored('[  SKIPPED ]', 'yellow'),
}


def _name(test) -> str:
    return f"{type(test).__name__}.{test._testMethodName}"


class CustomTestResult(unittest.TestResult):
    """Test result that reports each test as it finishes."""

    def __init__(self, verbose: int = 0, slowest: int = 5):
        super().__init__()
        self.verbose = verbose
        self.slowest = slowest
        self.current_suite: Optional[str] = None
        self.suite_start_time = 0.0
        self.total_start_time = 0.0
        self.test_start_time = 0.0
        self.suites_run = 0
        self.suite_test_count = 0
        self.test_times: Dict[str, float] = {}

    def startTestRun(self):
        super().startTestRun()
        self.total_start_time = time.time()
        print("Preparing to run descentlink tests...")

    def _close_suite(self):
        if self.current_suite is None:
            return
        suite_time = time.time() - self.suite_start_time
        print(f"{BAR} {self.suite_test_count} tests from {self.current_suite} ({int(suite_time * 1000)} ms total)")
        print("")

    def startTest(self, test):
        super().startTest(test)
        suite_name = type(test).__name__

        if self.current_suite != suite_name:
            self._close_suite()
            self.current_suite = suite_name
            self.suite_start_time = time.time()
            self.suites_run += 1
            self.suite_test_count = 0
            count = len(unittest.defaultTestLoader.getTestCaseNames(type(test)))
            print(f"{BAR} {count} tests from {suite_name}")

        if self.verbose > 1 and test._testMethodDoc:
            print(f"  {test._testMethodDoc.strip().splitlines()[0]}")
        print(f"{colored('[ RUN      ]', 'green')} {_name(test)}")
        self.test_start_time = time.time()
        self.suite_test_count += 1

    def _report(self, test, status: str, suffix: str = ""):
        test_time = time.time() - self.test_start_time
        self.test_times[_name(test)] = test_time
        line = f"{STATUS_TAGS[status]} {_name(test)} ({int(test_time * 1000)} ms)"
        print(f"{line} {suffix}" if suffix else line)

    def addSuccess(self, test):
        super().addSuccess(test)
        self._report(test, "ok")

    def addError(self, test, err):
        super().addError(test, err)
        self._report(test, "error")

    def addFailure(self, test, err):
        super().addFailure(test, err)
        self._report(test, "fail")

    def addSkip(self, test, reason):
        super().addSkip(test, reason)
        # optional extras such as the cvxpy oracle report here
        self._report(test, "skip", reason)

    def stopTestRun(self):
        super().stopTestRun()
        self._close_suite()

        total_time = time.time() - self.total_start_time
        print(f"{DOUBLE_BAR} {self.testsRun} tests from {self.suites_run} test suites ran. "
              f"({int(total_time * 1000)} ms total)")

        if self.test_times and self.slowest:
            print(f"{BAR} Slowest tests:")
            ranked = sorted(self.test_times.items(), key=lambda item: item[1], reverse=True)
            for name, seconds in ranked[:self.slowest]:
                print(f"             {seconds:8.2f} s  {name}")

        passed = self.testsRun - len(self.failures) - len(self.errors) - len(self.skipped)
        print(f"{colored('[  PASSED  ]', 'green')} {passed} tests.")
        if self.skipped:
            print(f"{STATUS_TAGS['skip']} {len(self.skipped)} tests.")
        for label, entries in (("FAILED", self.failures), ("ERROR", self.errors)):
            if not entries:
                continue
            tag = colored(f"[{label:^10}]", 'red')
            print(f"{tag} {len(entries)} tests, listed below:")
            for test, _ in entries:
                print(f"{tag} {_name(test)}")

        if self.verbose > 1:
            for test, trace in self.failures + self.errors:
                print(colored(f"\n{'=' * 70}\n{_name(test)}", 'red'))
                print(trace)


class CustomTestRunner:
    """Drop-in for unittest.TextTestRunner using CustomTestResult."""

    def __init__(self, verbosity: int = 1, failfast: bool = False, slowest: int = 5):
        self.verbosity = verbosity
        self.failfast = failfast
        self.slowest = slowest

    def run(self, test) -> CustomTestResult:
        result = CustomTestResult(verbose=self.verbosity, slowest=self.slowest)
        result.failfast = self.failfast
        result.startTestRun()
        try:
            test(result)
        finally:
            result.stopTestRun()
        return result
