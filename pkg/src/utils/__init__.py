"""Утилитарные функции и обвязка для проекта."""
