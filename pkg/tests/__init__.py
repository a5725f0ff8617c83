"""Test suite for raagkit."""
