"""Extract-method refactoring assistant for Java.

Parses Java sources into a statement-level method model, computes liveness
over a control-flow graph, validates and ranks LLM-sampled extraction
suggestions, and applies the chosen extraction as a textual refactoring.
"""

__version__ = "0.1.0"
