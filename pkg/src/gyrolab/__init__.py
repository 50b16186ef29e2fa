"""Finite gyrogroups."""
