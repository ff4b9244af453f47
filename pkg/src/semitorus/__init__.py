"""Toroidal quotients of Archimedean tilings."""
