"""Unit tests for MCP Simple Slackbot."""