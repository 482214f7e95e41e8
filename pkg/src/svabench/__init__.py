"""svabench: formal evaluation harness for machine-generated SystemVerilog assertions."""

__version__ = "0.1.0"
