# Regression tests for previously fixed discrepancies
