"""
Orchestration Module

Data file I/O, report rendering, command runners and the benchmark harness
behind the command-line interface.
"""
