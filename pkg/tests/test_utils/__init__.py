"""Пакет тестов утилитарных функций."""
