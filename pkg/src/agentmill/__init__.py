"""Profile-driven agent platform.

Turns declarative agent profiles into supervised running agent processes:
profile parsing and validation, an append-only skill library, an LLM-backed
synthesis pipeline with a deterministic mock, recursive plan construction and
workspace materialization, a process supervisor with a reference agent host,
a session-routing gateway with event aggregation, and richness metrics.
"""

__version__ = "0.1.0"
