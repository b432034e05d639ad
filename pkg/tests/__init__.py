# 測試套件
