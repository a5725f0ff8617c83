"""Defining graphs: parsing, links, stars, perps and join decompositions."""
