"""Critical behaviors, series solutions and monodromy data of Painleve VI."""

__version__ = "0.1.0"
