"""clusterlab: exact cluster structures on double Bruhat cells and Vinberg monoids."""

__version__ = "0.1.0"
