"""Корневой пакет тестов проекта."""
