"""
This file contains all the constants used in the project.

Values that a user may want to tune per machine are read from the environment
(optionally through a `.env` file); everything else is fixed.
"""

import os

from dotenv import load_dotenv

load_dotenv()

SEARCH_BUDGET = int(os.getenv("GPT_SEARCH_BUDGET", "10000000"))
MAX_TOTAL_DIM = int(os.getenv("GPT_MAX_TOTAL_DIM", "24"))
SEARCH_WORKERS = int(os.getenv("GPT_SEARCH_WORKERS", "1"))
RANDOM_SEED = int(os.getenv("GPT_RANDOM_SEED", "20120508"))
LOG_LEVEL = os.getenv("GPT_LOG_LEVEL", "WARNING")

IDENTIFICATION_BOUND = 1024

SUBSTITUTION_TOLERANCE = 1e-12
IDENTITY_TOLERANCE = 1e-9
SIGNIFICANT_DIGITS = 12

SCHEMA_VERSION = 1

RATIONAL_REGEX = r"^-?\d+(/\d+)?$"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_BUDGET = 4
