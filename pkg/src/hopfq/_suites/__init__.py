"""Verification suites wired into the Verifier."""
