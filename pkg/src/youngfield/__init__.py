"""Random partitions, Young tableaux and their moment/fluctuation asymptotics."""

__version__ = "0.1.0"
