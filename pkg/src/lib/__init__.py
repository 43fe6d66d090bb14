"""
Shared utilities: error types and crash reporting
"""
