from .brute import brute_bribery, brute_ccrv

__all__ = ["brute_bribery", "brute_ccrv"]
