"""Пакет с тестами подсистемы настроек."""
