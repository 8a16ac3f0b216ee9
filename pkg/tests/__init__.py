"""Tests for MCP Simple Slackbot."""