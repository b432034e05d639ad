# 處理器註冊
