"""Election control and bribery solvers built on weighted perfect b-matching."""
