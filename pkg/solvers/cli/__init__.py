from .problem_file import ProblemFile, parse_problem, serialize_problem

__all__ = ["ProblemFile", "parse_problem", "serialize_problem"]
